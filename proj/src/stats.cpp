#include "scatterlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scatterlab {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("correlation inputs differ in length");
  if (x.empty()) return 0.0;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

std::vector<AxisAssignment> greedy_axis_assignment(const Eigen::MatrixXd& abs_rho) {
  const auto params = static_cast<std::size_t>(abs_rho.rows());
  const auto axes = static_cast<std::size_t>(abs_rho.cols());
  if (params > axes) throw std::invalid_argument("more parameters than axes");
  std::vector<bool> param_used(params, false);
  std::vector<bool> axis_used(axes, false);
  std::vector<AxisAssignment> out(params);
  for (std::size_t round = 0; round < params; ++round) {
    double best = -1.0;
    std::size_t bp = 0;
    std::size_t ba = 0;
    for (std::size_t p = 0; p < params; ++p) {
      if (param_used[p]) continue;
      for (std::size_t a = 0; a < axes; ++a) {
        if (axis_used[a]) continue;
        const double v = abs_rho(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(a));
        if (v > best) {
          best = v;
          bp = p;
          ba = a;
        }
      }
    }
    param_used[bp] = true;
    axis_used[ba] = true;
    out[bp] = {bp, ba, best};
  }
  return out;
}

}  // namespace scatterlab
