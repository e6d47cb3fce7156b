#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace scatterlab {

struct ToneLabel {
  double f1 = 0.0;
  double alpha = 0.0;
  double r = 0.0;
};

// Rows are points. Throws std::invalid_argument on non-finite entries.
void check_finite(const Eigen::MatrixXd& x);

struct Edge {
  std::size_t to;
  double weight;
};

/// Undirected weighted graph; each node's edge list is sorted by neighbour.
class DistanceGraph {
 public:
  explicit DistanceGraph(std::size_t n) : adjacency_(n) {}

  std::size_t size() const { return adjacency_.size(); }
  const std::vector<Edge>& edges(std::size_t i) const { return adjacency_[i]; }
  // Inserts i–j once; a repeated edge keeps the smaller weight.
  void add_edge(std::size_t i, std::size_t j, double weight);
  std::size_t edge_count() const;

  // Component id per node; ids are assigned in order of lowest member index.
  std::vector<std::size_t> component_labels() const;
  // Members of the largest component (ties go to the lowest id), ascending.
  std::vector<std::size_t> largest_component() const;
  // Induced subgraph on `nodes`, renumbered 0..nodes.size()-1.
  DistanceGraph subgraph(const std::vector<std::size_t>& nodes) const;

 private:
  std::vector<std::vector<Edge>> adjacency_;
};

// Exact kNN by l2 distance, symmetrized by union. Ties go to the lower index.
DistanceGraph knn_graph(const Eigen::MatrixXd& points, std::size_t k, int jobs = 1);

// All-pairs shortest paths (Dijkstra per source). Unreachable pairs are +inf.
// Row i is the Dijkstra run from source i, so the matrix is symmetric only up
// to rounding of the path sums.
Eigen::MatrixXd geodesic_distances(const DistanceGraph& graph, int jobs = 1);

struct Embedding {
  Eigen::MatrixXd coords;           // embedded rows × dim, column means 0
  std::vector<std::size_t> rows;    // original row id of each embedded point
  std::vector<bool> in_component;   // per original row
  Eigen::VectorXd eigenvalues;      // MDS operator spectrum, descending, clipped at 0
};

// Classical MDS: B = -1/2 J D² J, top-`dim` eigenpairs, negative eigenvalues
// clipped to 0. Eigenvector signs are fixed so the largest-magnitude entry is positive.
Embedding classical_mds(const Eigen::MatrixXd& distances, int dim);

// kNN graph -> largest component -> geodesics -> classical MDS.
Embedding isomap(const Eigen::MatrixXd& points, std::size_t k, int dim, int jobs = 1);

}  // namespace scatterlab
