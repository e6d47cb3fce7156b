#pragma once

// Independent reference implementations used by the tests. None of these
// share code with the library beyond plain data types.

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "scatterlab/manifold.hpp"

namespace oracle {

using cd = std::complex<double>;

// O(n²) forward DFT.
std::vector<cd> dft(const std::vector<cd>& x);
std::vector<cd> dft(const std::vector<double>& x);
// O(n²) inverse DFT with 1/n.
std::vector<cd> idft(const std::vector<cd>& x);

// |ifft(fft(x) · h)|² by direct DFTs, keeping only bins 1..n/2.
std::vector<double> analytic_power(const std::vector<double>& x, const std::vector<cd>& h);

// All-pairs Bellman–Ford on an edge list.
Eigen::MatrixXd bellman_ford(const scatterlab::DistanceGraph& g);

// Random connected-or-not undirected graph with positive weights.
scatterlab::DistanceGraph random_graph(std::size_t n, double density, std::mt19937_64& rng);

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& points);

// Trapezoid rule on a uniform grid.
template <class F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i));
  return s * h;
}

}  // namespace oracle
