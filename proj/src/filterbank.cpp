#include "scatterlab/filterbank.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace scatterlab {
namespace {

constexpr int kGammatoneOrder = 4;

double gammatone_taper(double omega) {
  if (omega >= 1.0) return 1.0;
  const double s = std::sin(0.5 * std::numbers::pi * omega);
  return s * s;
}

Complex gammatone_raw(double omega, double b) {
  const Complex z(1.0, b * (omega - 1.0));
  Complex zn = 1.0;
  for (int i = 0; i < kGammatoneOrder; ++i) zn *= z;
  return gammatone_taper(omega) / zn;
}

double morlet_raw(double omega, double sigma, double dc_weight) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return std::exp(-(omega - 1.0) * (omega - 1.0) * inv) - dc_weight * std::exp(-omega * omega * inv);
}

template <class F>
double simpson(F&& f, double a, double b, std::size_t intervals) {
  const double h = (b - a) / static_cast<double>(intervals);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return acc * h / 3.0;
}

struct Profile {
  double upper;
  std::size_t intervals;
};

Profile integration_profile(WaveletFamily family, double shape) {
  switch (family) {
    case WaveletFamily::Morlet:
      return {1.0 + 14.0 * shape, 1u << 16};
    case WaveletFamily::Gammatone:
      return {1.0 + 400.0 / shape, 1u << 18};
    case WaveletFamily::ComplexShannon:
      return {shape, 1u << 12};
  }
  return {2.0, 1u << 12};
}

// ERB of the raw (unnormalized) profile, as a function of its width parameter.
double raw_erb(WaveletFamily family, double shape) {
  const auto [upper, intervals] = integration_profile(family, shape);
  double peak = 0.0;
  auto power = [&](double w) {
    double v = 0.0;
    if (family == WaveletFamily::Morlet) {
      const double dc = std::exp(-1.0 / (2.0 * shape * shape));
      const double m = morlet_raw(w, shape, dc);
      v = m * m;
    } else {
      v = std::norm(gammatone_raw(w, shape));
    }
    peak = std::max(peak, v);
    return v;
  };
  const double energy = simpson(power, 0.0, upper, intervals);
  return energy / peak;
}

double calibrate(WaveletFamily family, int q) {
  const double target = 1.0 / q;
  double lo = 0.0;
  double hi = 0.0;
  if (family == WaveletFamily::Morlet) {
    const double guess = 1.0 / (q * std::sqrt(std::numbers::pi));
    lo = 0.5 * guess;
    hi = 1.5 * guess;
  } else {
    const double guess = 5.0 * std::numbers::pi * q / 16.0;
    lo = 0.3 * guess;
    hi = 1.5 * guess;
  }
  // Morlet ERB grows with σ; Gammatone ERB shrinks with B.
  const bool increasing = family == WaveletFamily::Morlet;
  auto above = [&](double s) { return (raw_erb(family, s) > target) == increasing; };
  if (!above(hi) || above(lo)) {
    throw std::runtime_error(fmt::format("cannot calibrate {} wavelet for Q={}", to_string(family), q));
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double calibrated_shape(WaveletFamily family, int q) {
  if (family == WaveletFamily::ComplexShannon) return std::exp2(1.0 / q);
  static std::mutex mutex;
  static std::map<std::pair<WaveletFamily, int>, double> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({family, q}, 0.0);
  if (inserted) it->second = calibrate(family, q);
  return it->second;
}

}  // namespace

std::string_view to_string(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::Morlet:
      return "morlet";
    case WaveletFamily::Gammatone:
      return "gammatone";
    case WaveletFamily::ComplexShannon:
      return "shannon";
  }
  return "unknown";
}

WaveletFamily parse_wavelet_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "morlet") return WaveletFamily::Morlet;
  if (lower == "gammatone") return WaveletFamily::Gammatone;
  if (lower == "shannon" || lower == "complex-shannon" || lower == "complexshannon") {
    return WaveletFamily::ComplexShannon;
  }
  throw std::invalid_argument(fmt::format("unknown wavelet family '{}'", name));
}

MotherWavelet::MotherWavelet(WaveletFamily family, int q) : family_(family), q_(q) {
  if (q < 1) throw std::invalid_argument("quality factor Q must be >= 1");
  shape_ = calibrated_shape(family, q);
  if (family == WaveletFamily::Morlet) {
    dc_weight_ = std::exp(-1.0 / (2.0 * shape_ * shape_));
    scale_ = 1.0 / morlet_raw(1.0, shape_, dc_weight_);
  }
}

Complex MotherWavelet::operator()(double omega) const {
  if (!(omega > 0.0)) return 0.0;
  switch (family_) {
    case WaveletFamily::Morlet:
      return scale_ * morlet_raw(omega, shape_, dc_weight_);
    case WaveletFamily::Gammatone:
      return gammatone_raw(omega, shape_);
    case WaveletFamily::ComplexShannon:
      return (omega > 1.0 && omega <= shape_) ? 1.0 : 0.0;
  }
  return 0.0;
}

Complex evaluate_wavelet_hat(WaveletFamily family, int q, double omega) {
  return MotherWavelet(family, q)(omega);
}

double wavelet_erb(const MotherWavelet& psi) {
  if (psi.family() == WaveletFamily::ComplexShannon) return psi.shape() - 1.0;
  const auto [upper, intervals] = integration_profile(psi.family(), psi.shape());
  double peak = 0.0;
  auto power = [&](double w) {
    const double v = std::norm(psi(w));
    peak = std::max(peak, v);
    return v;
  };
  const double energy = simpson(power, 0.0, upper, intervals);
  return energy / peak;
}

std::vector<double> build_frequency_grid(double lambda_max, int q, int j) {
  if (!(lambda_max > 0.0 && lambda_max <= 0.5)) {
    throw std::invalid_argument(fmt::format("lambda_max must lie in (0, 0.5], got {}", lambda_max));
  }
  if (q < 1 || j < 1) throw std::invalid_argument("Q and J must both be >= 1");
  std::vector<double> grid(static_cast<std::size_t>(q) * static_cast<std::size_t>(j));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = lambda_max * std::exp2(-static_cast<double>(i) / q);
  }
  return grid;
}

void validate(const FilterbankSpec& spec) {
  if (spec.q < 1) throw std::invalid_argument("Q must be >= 1");
  if (spec.j < 1) throw std::invalid_argument("J must be >= 1");
  if (!(spec.lambda_max > 0.0 && spec.lambda_max <= 0.5)) {
    throw std::invalid_argument(fmt::format("lambda_max must lie in (0, 0.5], got {}", spec.lambda_max));
  }
  if (spec.signal_len < 2 || !is_power_of_two(spec.signal_len)) {
    throw std::invalid_argument(fmt::format("signal_len must be a power of two, got {}", spec.signal_len));
  }
  if (spec.t < 1 || spec.t > spec.signal_len) {
    throw std::invalid_argument(fmt::format("T must lie in [1, signal_len], got {}", spec.t));
  }
  const double cycles = spec.lambda_max * std::exp2(-spec.j) * static_cast<double>(spec.signal_len);
  if (cycles < 1.0) {
    throw std::invalid_argument(
        fmt::format("lowest wavelet spans {:.3g} cycles in the window; need lambda_max * 2^-J * signal_len >= 1",
                    cycles));
  }
}

Filterbank::Filterbank(FilterbankSpec spec, std::vector<double> lambdas, std::vector<std::vector<Complex>> filters,
                       std::vector<double> lowpass_hat)
    : spec_(spec), lambdas_(std::move(lambdas)), filters_(std::move(filters)), lowpass_hat_(std::move(lowpass_hat)) {}

std::size_t Filterbank::nearest_index(double nu) const {
  if (!(nu > 0.0)) throw std::invalid_argument("nearest_index needs a positive frequency");
  std::size_t best = 0;
  double best_dist = std::abs(std::log2(nu / lambdas_[0]));
  for (std::size_t j = 1; j < lambdas_.size(); ++j) {
    const double d = std::abs(std::log2(nu / lambdas_[j]));
    if (d < best_dist) {
      best = j;
      best_dist = d;
    }
  }
  return best;
}

Filterbank build_filterbank(const FilterbankSpec& spec) {
  validate(spec);
  const std::size_t n = spec.signal_len;
  auto lambdas = build_frequency_grid(spec.lambda_max, spec.q, spec.j);
  const MotherWavelet psi(spec.family, spec.q);

  std::vector<std::vector<Complex>> filters(lambdas.size(), std::vector<Complex>(n, 0.0));
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const double lambda = lambdas[j];
    const double upper = lambda * psi.shape();
    for (std::size_t k = 1; k <= n / 2; ++k) {
      const double nu = bin_frequency(k, n);
      if (spec.family == WaveletFamily::ComplexShannon) {
        // Compare frequencies directly so band edges are not blurred by rounding in ν/λ.
        filters[j][k] = (nu > lambda && nu <= upper) ? 1.0 : 0.0;
      } else {
        filters[j][k] = psi(nu / lambda);
      }
    }
  }

  // Hann window of duration T centred on sample 0 (circularly), unit DC gain.
  std::vector<Complex> window(n, 0.0);
  const double t = static_cast<double>(spec.t);
  double total = 0.0;
  for (std::ptrdiff_t d = -static_cast<std::ptrdiff_t>(n / 2); d < static_cast<std::ptrdiff_t>(n / 2); ++d) {
    if (2.0 * std::abs(static_cast<double>(d)) >= t) continue;
    const double c = std::cos(std::numbers::pi * static_cast<double>(d) / t);
    const std::size_t idx = d < 0 ? n - static_cast<std::size_t>(-d) : static_cast<std::size_t>(d);
    window[idx] = c * c;
    total += c * c;
  }
  for (auto& w : window) w /= total;
  std::vector<Complex> spectrum(n);
  Fft(n).forward(window, spectrum);
  std::vector<double> lowpass(n);
  for (std::size_t k = 0; k < n; ++k) lowpass[k] = spectrum[k].real();
  lowpass[0] = 1.0;

  return Filterbank(spec, std::move(lambdas), std::move(filters), std::move(lowpass));
}

}  // namespace scatterlab
