#include "scatterlab/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include <fmt/format.h>

#include "scatterlab/parallel.hpp"

namespace scatterlab {

void check_finite(const Eigen::MatrixXd& x) {
  if (!x.allFinite()) throw std::invalid_argument("feature matrix contains non-finite values");
}

void DistanceGraph::add_edge(std::size_t i, std::size_t j, double weight) {
  if (i == j) return;
  auto insert = [&](std::size_t a, std::size_t b) {
    auto& list = adjacency_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b, [](const Edge& e, std::size_t v) { return e.to < v; });
    if (it != list.end() && it->to == b) {
      it->weight = std::min(it->weight, weight);
    } else {
      list.insert(it, Edge{b, weight});
    }
  };
  insert(i, j);
  insert(j, i);
}

std::size_t DistanceGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adjacency_) total += list.size();
  return total / 2;
}

std::vector<std::size_t> DistanceGraph::component_labels() const {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(size(), unset);
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < size(); ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& e : adjacency_[u]) {
        if (label[e.to] == unset) {
          label[e.to] = next;
          stack.push_back(e.to);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<std::size_t> DistanceGraph::largest_component() const {
  const auto labels = component_labels();
  if (labels.empty()) return {};
  const std::size_t count = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> sizes(count, 0);
  for (const auto l : labels) ++sizes[l];
  const auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == best) members.push_back(i);
  }
  return members;
}

DistanceGraph DistanceGraph::subgraph(const std::vector<std::size_t>& nodes) const {
  constexpr auto absent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(size(), absent);
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  DistanceGraph sub(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& e : adjacency_[nodes[i]]) {
      if (index[e.to] != absent && index[e.to] > i) sub.add_edge(i, index[e.to], e.weight);
    }
  }
  return sub;
}

DistanceGraph knn_graph(const Eigen::MatrixXd& points, std::size_t k, int jobs) {
  check_finite(points);
  const auto n = static_cast<std::size_t>(points.rows());
  if (k < 1 || k >= n) throw std::invalid_argument(fmt::format("K must satisfy 1 <= K < n (K={}, n={})", k, n));

  std::vector<std::vector<Edge>> neighbours(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    std::vector<Edge> cand;
    cand.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.push_back({j, (points.row(static_cast<Eigen::Index>(i)) - points.row(static_cast<Eigen::Index>(j))).norm()});
    }
    auto closer = [](const Edge& a, const Edge& b) { return a.weight < b.weight || (a.weight == b.weight && a.to < b.to); };
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end(), closer);
    cand.resize(k);
    neighbours[i] = std::move(cand);
  });

  DistanceGraph graph(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : neighbours[i]) graph.add_edge(i, e.to, e.weight);
  }
  return graph;
}

Eigen::MatrixXd geodesic_distances(const DistanceGraph& graph, int jobs) {
  const std::size_t n = graph.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), inf);

  parallel_for(n, jobs, [&](std::size_t source) {
    std::vector<double> d(n, inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    d[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > d[u]) continue;
      for (const auto& e : graph.edges(u)) {
        const double cand = du + e.weight;
        if (cand < d[e.to]) {
          d[e.to] = cand;
          heap.push({cand, e.to});
        }
      }
    }
    // Each row is summed outward from its own source, so (i, j) and (j, i) can
    // differ in the last bit.
    for (std::size_t j = 0; j < n; ++j) dist(static_cast<Eigen::Index>(source), static_cast<Eigen::Index>(j)) = d[j];
  });
  return dist;
}

Embedding classical_mds(const Eigen::MatrixXd& distances, int dim) {
  if (distances.rows() != distances.cols()) throw std::invalid_argument("distance matrix must be square");
  if (!distances.allFinite()) throw std::invalid_argument("distance matrix contains non-finite entries");
  if (dim < 1 || dim > distances.rows()) throw std::invalid_argument("embedding dimension out of range");
  const Eigen::Index n = distances.rows();

  const Eigen::MatrixXd sq = distances.array().square().matrix();
  const Eigen::VectorXd row_mean = sq.rowwise().mean();
  const Eigen::VectorXd col_mean = sq.colwise().mean().transpose();
  const double grand = sq.mean();
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) = -0.5 * (sq(i, j) - row_mean(i) - col_mean(j) + grand);
  }
  b = 0.5 * (b + b.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Eigen::VectorXd values = solver.eigenvalues().reverse();
  const Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  Embedding out;
  out.eigenvalues = values.cwiseMax(0.0);
  out.coords.resize(n, dim);
  for (int c = 0; c < dim; ++c) {
    Eigen::VectorXd v = vectors.col(c);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0.0) v = -v;
    const double scale = std::sqrt(std::max(values(c), 0.0));
    out.coords.col(c) = v * scale;
    // Remove the residual mean the eigensolver leaves at round-off level.
    out.coords.col(c).array() -= out.coords.col(c).mean();
  }
  out.rows.resize(static_cast<std::size_t>(n));
  std::iota(out.rows.begin(), out.rows.end(), std::size_t{0});
  out.in_component.assign(static_cast<std::size_t>(n), true);
  return out;
}

Embedding isomap(const Eigen::MatrixXd& points, std::size_t k, int dim, int jobs) {
  const DistanceGraph graph = knn_graph(points, k, jobs);
  const auto members = graph.largest_component();
  if (members.size() < static_cast<std::size_t>(dim) + 1) {
    throw std::runtime_error(
        fmt::format("largest kNN component has {} points; need at least {}", members.size(), dim + 1));
  }
  const DistanceGraph sub = members.size() == graph.size() ? graph : graph.subgraph(members);
  Embedding out = classical_mds(geodesic_distances(sub, jobs), dim);
  out.rows = members;
  out.in_component.assign(graph.size(), false);
  for (const auto m : members) out.in_component[m] = true;
  return out;
}

}  // namespace scatterlab
