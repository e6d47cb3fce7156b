#include "scatterlab/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "scatterlab/parallel.hpp"

namespace scatterlab {
namespace {

double activate(Complex z, Activation activation) {
  return activation == Activation::SquaredModulus ? std::norm(z) : std::abs(z);
}

// |ifft(spectrum · ψ̂_j)|^p into `out`. Only bins 1..n/2 can be nonzero for an
// analytic filter with null average.
void filter_and_activate(std::span<const Complex> spectrum, std::span<const Complex> filter, const Fft& fft,
                         Activation activation, std::span<double> out) {
  const std::size_t n = spectrum.size();
  std::vector<Complex> buffer(n, 0.0);
  for (std::size_t k = 1; k <= n / 2; ++k) buffer[k] = spectrum[k] * filter[k];
  fft.inverse(buffer);
  for (std::size_t t = 0; t < n; ++t) out[t] = activate(buffer[t], activation);
}

}  // namespace

bool is_valid_path(const ScatteringPath& path, std::size_t filter_count) {
  if (path.empty()) return false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= filter_count) return false;
    if (i > 0 && path[i] <= path[i - 1]) return false;
  }
  return true;
}

std::vector<ScatteringPath> enumerate_paths(std::size_t order, std::size_t filter_count) {
  std::vector<ScatteringPath> out;
  if (order == 0 || order > filter_count) return out;
  ScatteringPath path(order);
  for (std::size_t i = 0; i < order; ++i) path[i] = i;
  for (;;) {
    out.push_back(path);
    // Advance to the next strictly increasing tuple.
    std::size_t i = order;
    while (i > 0 && path[i - 1] == filter_count - order + (i - 1)) --i;
    if (i == 0) return out;
    ++path[i - 1];
    for (std::size_t k = i; k < order; ++k) path[k] = path[k - 1] + 1;
  }
}

std::string path_label(const ScatteringPath& path, const Filterbank& fb) {
  std::string label = fmt::format("S{}", path.size());
  for (const auto j : path) label += fmt::format(":{:.6g}", fb.lambda(j));
  return label;
}

ScatteringLayer::ScatteringLayer(std::size_t depth, std::vector<ScatteringPath> paths, std::size_t signal_len)
    : depth_(depth), signal_len_(signal_len), paths_(std::move(paths)), data_(paths_.size() * signal_len, 0.0) {}

ScatteringLayer ScatteringLayer::select(std::span<const std::size_t> rows) const {
  std::vector<ScatteringPath> picked;
  picked.reserve(rows.size());
  for (const auto r : rows) {
    if (r >= paths_.size()) throw std::out_of_range("layer row out of range");
    picked.push_back(paths_[r]);
  }
  ScatteringLayer out(depth_, std::move(picked), signal_len_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

std::size_t ScatteringLayer::find(const ScatteringPath& p) const {
  return static_cast<std::size_t>(std::find(paths_.begin(), paths_.end(), p) - paths_.begin());
}

std::vector<double> ScatteringFeature::flatten() const {
  std::vector<double> out;
  out.reserve(dimension());
  out.push_back(order0);
  out.insert(out.end(), values.begin(), values.end());
  return out;
}

double ScatteringFeature::at(const ScatteringPath& path) const {
  const auto it = std::find(paths.begin(), paths.end(), path);
  if (it == paths.end()) throw std::out_of_range("path not present in feature");
  return values[static_cast<std::size_t>(it - paths.begin())];
}

ScatteringLayer scalogram_power(std::span<const double> signal, const Filterbank& fb, Activation activation,
                                int jobs) {
  const std::size_t n = fb.signal_len();
  if (signal.size() != n) {
    throw std::invalid_argument(fmt::format("signal has {} samples, filterbank expects {}", signal.size(), n));
  }
  const Fft fft(n);
  std::vector<Complex> spectrum(n);
  fft.forward_real_half(signal, spectrum);

  std::vector<ScatteringPath> paths;
  for (std::size_t j = 0; j < fb.size(); ++j) paths.push_back({j});
  ScatteringLayer layer(1, std::move(paths), n);
  parallel_for(fb.size(), jobs,
               [&](std::size_t j) { filter_and_activate(spectrum, fb.filter(j), fft, activation, layer.row(j)); });
  return layer;
}

ScatteringLayer propagate_layer(const ScatteringLayer& prev, const Filterbank& fb, Activation activation,
                                int jobs) {
  const std::size_t n = fb.signal_len();
  if (!prev.empty() && prev.signal_len() != n) {
    throw std::invalid_argument("layer was produced with a different signal length");
  }

  struct Child {
    std::size_t parent;
    std::size_t filter;
  };
  std::vector<Child> children;
  std::vector<ScatteringPath> paths;
  for (std::size_t p = 0; p < prev.path_count(); ++p) {
    const auto& parent = prev.path(p);
    if (!is_valid_path(parent, fb.size())) throw std::invalid_argument("layer path does not match filterbank");
    for (std::size_t j = parent.back() + 1; j < fb.size(); ++j) {
      children.push_back({p, j});
      auto path = parent;
      path.push_back(j);
      paths.push_back(std::move(path));
    }
  }
  ScatteringLayer next(prev.depth() + 1, std::move(paths), n);
  if (children.empty()) return next;

  const Fft fft(n);
  // Spectra of parents that have at least one child.
  std::vector<std::vector<Complex>> spectra(prev.path_count());
  parallel_for(prev.path_count(), jobs, [&](std::size_t p) {
    if (prev.path(p).back() + 1 >= fb.size()) return;
    spectra[p].resize(n);
    fft.forward_real_half(prev.row(p), spectra[p]);
  });
  parallel_for(children.size(), jobs, [&](std::size_t c) {
    filter_and_activate(spectra[children[c].parent], fb.filter(children[c].filter), fft, activation, next.row(c));
  });
  return next;
}

double lowpass_average(std::span<const double> row, const Filterbank& fb) {
  // Circular convolution with φ_T scales the mean by φ̂_T(0); the global time
  // average of the smoothed trajectory is therefore φ̂_T(0) times the mean.
  double sum = 0.0;
  for (const double v : row) sum += v;
  return fb.lowpass_hat()[0] * sum / static_cast<double>(row.size());
}

ScatteringFeature invariants(std::span<const double> signal, std::span<const ScatteringLayer> layers,
                             const Filterbank& fb, std::size_t max_order) {
  ScatteringFeature feature;
  const auto& spec = fb.spec();
  feature.meta = {spec.family, spec.q, spec.j, spec.t, spec.lambda_max};
  feature.order0 = lowpass_average(signal, fb);
  for (const auto& layer : layers) {
    for (std::size_t p = 0; p < layer.path_count(); ++p) {
      feature.paths.push_back(layer.path(p));
      feature.values.push_back(lowpass_average(layer.row(p), fb));
    }
  }
  for (std::size_t m = layers.size() + 1; m <= max_order; ++m) {
    for (auto& path : enumerate_paths(m, fb.size())) {
      feature.paths.push_back(std::move(path));
      feature.values.push_back(0.0);
    }
  }
  return feature;
}

ScatterResult scatter(std::span<const double> signal, const Filterbank& fb, const ScatterOptions& options) {
  if (options.max_order < 1) throw std::invalid_argument("max_order must be >= 1");
  ScatterResult result;
  result.layers.push_back(scalogram_power(signal, fb, options.activation, options.jobs));
  while (static_cast<int>(result.layers.size()) < options.max_order) {
    const auto& last = result.layers.back();
    if (layer_energy(last) < options.energy_floor) break;
    auto next = propagate_layer(last, fb, options.activation, options.jobs);
    if (next.empty()) break;
    result.layers.push_back(std::move(next));
  }
  result.feature = invariants(signal, result.layers, fb, static_cast<std::size_t>(options.max_order));
  return result;
}

std::vector<RenormalizedCoefficient> renormalize_second_order(const ScatteringFeature& feature,
                                                              double eps_relative) {
  if (!(eps_relative > 0.0)) throw std::invalid_argument("eps must be positive");
  std::vector<std::pair<std::size_t, double>> first;
  double max_first = 0.0;
  bool has_second = false;
  for (std::size_t i = 0; i < feature.paths.size(); ++i) {
    if (feature.paths[i].size() == 1) {
      first.emplace_back(feature.paths[i][0], feature.values[i]);
      max_first = std::max(max_first, feature.values[i]);
    } else if (feature.paths[i].size() == 2) {
      has_second = true;
    }
  }
  if (first.empty() || !has_second) {
    throw std::invalid_argument("renormalization needs first- and second-order coefficients");
  }
  const double eps = eps_relative * max_first;

  std::vector<RenormalizedCoefficient> out;
  for (std::size_t i = 0; i < feature.paths.size(); ++i) {
    const auto& path = feature.paths[i];
    if (path.size() != 2) continue;
    const auto parent = std::find_if(first.begin(), first.end(), [&](const auto& f) { return f.first == path[0]; });
    if (parent == first.end()) throw std::invalid_argument("second-order path without first-order parent");
    const double s1 = parent->second;
    const double value = (s1 <= eps) ? 0.0 : feature.values[i] / (s1 + eps);
    out.push_back({path[0], path[1], value});
  }
  return out;
}

double layer_energy(const ScatteringLayer& layer) {
  double energy = 0.0;
  for (const double v : layer.data()) energy += v * v;
  return energy;
}

}  // namespace scatterlab
