#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

std::vector<cd> dft(const std::vector<cd>& x) {
  const std::size_t n = x.size();
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      // Reduce k·t mod n first so the angle stays accurate for large n.
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
      acc += x[t] * cd(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

std::vector<cd> dft(const std::vector<double>& x) { return dft(std::vector<cd>(x.begin(), x.end())); }

std::vector<cd> idft(const std::vector<cd>& x) {
  std::vector<cd> conj(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) conj[i] = std::conj(x[i]);
  auto y = dft(conj);
  for (auto& v : y) v = std::conj(v) / static_cast<double>(x.size());
  return y;
}

std::vector<double> analytic_power(const std::vector<double>& x, const std::vector<cd>& h) {
  const std::size_t n = x.size();
  auto spec = dft(x);
  std::vector<cd> prod(n, 0.0);
  for (std::size_t k = 1; k <= n / 2; ++k) prod[k] = spec[k] * h[k];
  auto y = idft(prod);
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = std::norm(y[t]);
  return out;
}

Eigen::MatrixXd bellman_ford(const scatterlab::DistanceGraph& g) {
  const std::size_t n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), inf);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> dist(n, inf);
    dist[s] = 0.0;
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] == inf) continue;
        for (const auto& e : g.edges(u)) {
          if (dist[u] + e.weight < dist[e.to]) {
            dist[e.to] = dist[u] + e.weight;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    for (std::size_t t = 0; t < n; ++t) d(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = dist[t];
  }
  return d;
}

scatterlab::DistanceGraph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  scatterlab::DistanceGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(rng) < density) g.add_edge(i, j, 0.1 + u(rng));
    }
  }
  return g;
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& p) {
  const auto n = p.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (p.row(i) - p.row(j)).norm();
  }
  return d;
}

}  // namespace oracle
