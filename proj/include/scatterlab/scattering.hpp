#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scatterlab/filterbank.hpp"

namespace scatterlab {

// A scattering path stores filterbank indices, not frequencies. Indices grow
// as λ shrinks, so a valid path is strictly increasing in index.
using ScatteringPath = std::vector<std::size_t>;

bool is_valid_path(const ScatteringPath& path, std::size_t filter_count);

// All admissible paths of the given order, in lexicographic index order.
std::vector<ScatteringPath> enumerate_paths(std::size_t order, std::size_t filter_count);

// "S{m}:λ1:λ2..." with λ in cycles/sample at 6 significant digits.
std::string path_label(const ScatteringPath& path, const Filterbank& fb);

enum class Activation { SquaredModulus, Modulus };

/// Layer U_m: one nonnegative time series per path, stored row-major.
class ScatteringLayer {
 public:
  ScatteringLayer() = default;
  ScatteringLayer(std::size_t depth, std::vector<ScatteringPath> paths, std::size_t signal_len);

  std::size_t depth() const { return depth_; }
  std::size_t signal_len() const { return signal_len_; }
  std::size_t path_count() const { return paths_.size(); }
  bool empty() const { return paths_.empty(); }
  const std::vector<ScatteringPath>& paths() const { return paths_; }
  const ScatteringPath& path(std::size_t i) const { return paths_[i]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * signal_len_, signal_len_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * signal_len_, signal_len_}; }
  std::span<const double> data() const { return data_; }

  // Copy of the layer restricted to the given rows, in the given order.
  ScatteringLayer select(std::span<const std::size_t> rows) const;
  // Row index of `p`, or path_count() if absent.
  std::size_t find(const ScatteringPath& p) const;

 private:
  std::size_t depth_ = 0;
  std::size_t signal_len_ = 0;
  std::vector<ScatteringPath> paths_;
  std::vector<double> data_;
};

struct ScatterOptions {
  int max_order = 2;
  Activation activation = Activation::SquaredModulus;
  // A layer whose energy falls below this (absolute) ends the cascade.
  double energy_floor = 1e-30;
  int jobs = 1;
};

struct FeatureMeta {
  WaveletFamily family = WaveletFamily::Morlet;
  int q = 1;
  int j = 1;
  std::size_t t = 1;
  double lambda_max = 0.25;
};

/// Time-averaged invariant coefficients. `paths` and `values` are parallel;
/// paths are sorted by order, then lexicographically by index.
struct ScatteringFeature {
  double order0 = 0.0;
  std::vector<ScatteringPath> paths;
  std::vector<double> values;
  FeatureMeta meta;

  std::size_t dimension() const { return 1 + values.size(); }
  // [order0, values...]
  std::vector<double> flatten() const;
  // Value at `path`; throws std::out_of_range if absent.
  double at(const ScatteringPath& path) const;
};

struct ScatterResult {
  ScatteringFeature feature;
  std::vector<ScatteringLayer> layers;  // layers[m-1] is U_m
};

ScatteringLayer scalogram_power(std::span<const double> signal, const Filterbank& fb,
                                Activation activation = Activation::SquaredModulus, int jobs = 1);

ScatteringLayer propagate_layer(const ScatteringLayer& prev, const Filterbank& fb,
                                Activation activation = Activation::SquaredModulus, int jobs = 1);

ScatterResult scatter(std::span<const double> signal, const Filterbank& fb, const ScatterOptions& options = {});

// Time average of (row * φ_T).
double lowpass_average(std::span<const double> row, const Filterbank& fb);

// Feature built from precomputed layers (order0 from the raw signal). Orders
// above the last layer up to `max_order` are filled with zeros so that every
// signal yields the same coefficient set.
ScatteringFeature invariants(std::span<const double> signal, std::span<const ScatteringLayer> layers,
                             const Filterbank& fb, std::size_t max_order = 0);

struct RenormalizedCoefficient {
  std::size_t lambda1 = 0;
  std::size_t lambda2 = 0;
  double value = 0.0;
};

/// S̃2(λ1, λ2) = S2 / (S1(λ1) + eps), eps = eps_relative * max S1. Entries
/// whose parent S1 is <= eps are reported as 0. Same order as the order-2
/// paths in `feature`.
std::vector<RenormalizedCoefficient> renormalize_second_order(const ScatteringFeature& feature,
                                                              double eps_relative = 1e-12);

// Squared l2 norm of the layer tensor, summed in path-major order.
double layer_energy(const ScatteringLayer& layer);

}  // namespace scatterlab
