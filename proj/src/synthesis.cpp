#include "scatterlab/synthesis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "scatterlab/parallel.hpp"

namespace scatterlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_frequency(double nu, const char* name) {
  if (!(nu > 0.0 && nu < 0.5)) {
    throw std::invalid_argument(fmt::format("{} must lie in (0, 0.5) cycles/sample, got {}", name, nu));
  }
}

double hann(std::size_t t, std::size_t len) {
  const double s = std::sin(std::numbers::pi * static_cast<double>(t) / static_cast<double>(len));
  return s * s;
}

}  // namespace

std::vector<double> two_tone(const TwoToneSpec& spec) {
  check_frequency(spec.nu1, "nu1");
  check_frequency(spec.nu2, "nu2");
  if (spec.a1 < 0.0 || spec.a2 < 0.0) throw std::invalid_argument("amplitudes must be nonnegative");
  if (spec.signal_len == 0) throw std::invalid_argument("signal_len must be positive");
  std::vector<double> y(spec.signal_len);
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double tt = static_cast<double>(t);
    y[t] = spec.a1 * std::cos(kTwoPi * spec.nu1 * tt + spec.phi1) + spec.a2 * std::cos(kTwoPi * spec.nu2 * tt + spec.phi2);
  }
  return y;
}

double additive_amplitude(int harmonic, double alpha, double r) {
  const double sign = (harmonic % 2 == 0) ? 1.0 : -1.0;
  return (1.0 + sign * r) / std::pow(static_cast<double>(harmonic), alpha);
}

std::vector<double> additive_tone(const AdditiveToneSpec& spec) {
  if (spec.alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (spec.r < 0.0 || spec.r > 1.0) throw std::invalid_argument("r must lie in [0, 1]");
  if (spec.f1 < 1 || spec.n < 1) throw std::invalid_argument("f1 and N must be >= 1");
  if (spec.t < 2) throw std::invalid_argument("T must be >= 2");
  const double nyquist = static_cast<double>(spec.t) / 2.0;
  if (static_cast<double>(spec.f1) >= nyquist) {
    throw std::invalid_argument(fmt::format("fundamental {} is at or above Nyquist ({})", spec.f1, nyquist));
  }
  if (!spec.drop_above_nyquist && static_cast<double>(spec.n) * spec.f1 >= nyquist) {
    throw std::invalid_argument(fmt::format("N*f1 = {} must stay below T/2 = {}", spec.n * spec.f1, nyquist));
  }

  std::vector<double> y(spec.t, 0.0);
  for (int h = 1; h <= spec.n; ++h) {
    if (static_cast<double>(h) * spec.f1 >= nyquist) break;
    const double amp = additive_amplitude(h, spec.alpha, spec.r);
    if (amp == 0.0) continue;
    const std::size_t step = static_cast<std::size_t>(h) * static_cast<std::size_t>(spec.f1);
    for (std::size_t t = 0; t < spec.t; ++t) {
      const double cycles = static_cast<double>((step * t) % spec.t) / static_cast<double>(spec.t);
      y[t] += amp * std::cos(kTwoPi * cycles);
    }
  }
  for (std::size_t t = 0; t < spec.t; ++t) y[t] *= hann(t, spec.t);
  return y;
}

std::vector<double> harmonic_stack(const HarmonicStackSpec& spec) {
  if (spec.n < 1 || spec.f1 < 1) throw std::invalid_argument("N and f1 must be >= 1");
  if (static_cast<double>(spec.n) * spec.f1 >= static_cast<double>(spec.signal_len) / 2.0) {
    throw std::invalid_argument(
        fmt::format("N*f1 = {} must stay below signal_len/2 = {}", spec.n * spec.f1, spec.signal_len / 2));
  }
  std::vector<double> y(spec.signal_len, 0.0);
  const double len = static_cast<double>(spec.signal_len);
  for (int h = 1; h <= spec.n; ++h) {
    // Reduce the phase index modulo L so arguments stay small and bins stay exact.
    const std::size_t step = static_cast<std::size_t>(h) * static_cast<std::size_t>(spec.f1);
    for (std::size_t t = 0; t < spec.signal_len; ++t) {
      const double cycles = static_cast<double>((step * t) % spec.signal_len) / len;
      y[t] += spec.a1 * std::cos(kTwoPi * cycles + spec.phi1);
    }
  }
  return y;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return lo + static_cast<int>(x % span);
  }
}

std::vector<DatasetItem> dataset_generate(const DatasetConfig& config, int jobs) {
  if (config.alpha_steps == 0 || config.r_steps == 0) throw std::invalid_argument("grid must be non-empty");
  if (config.f1_min < 1 || config.f1_max < config.f1_min) throw std::invalid_argument("invalid f1 range");

  auto linspace = [](double lo, double hi, std::size_t steps, std::size_t i) {
    return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  };

  const std::size_t count = config.alpha_steps * config.r_steps;
  std::vector<DatasetItem> items(count);
  std::mt19937_64 rng(config.seed);
  const int f1_span = config.f1_max - config.f1_min + 1;
  for (std::size_t i = 0; i < count; ++i) {
    auto& spec = items[i].spec;
    spec.alpha = linspace(config.alpha_min, config.alpha_max, config.alpha_steps, i / config.r_steps);
    spec.r = linspace(config.r_min, config.r_max, config.r_steps, i % config.r_steps);
    spec.f1 = config.f1_mode == FundamentalMode::Random
                  ? uniform_int(rng, config.f1_min, config.f1_max)
                  : config.f1_min + static_cast<int>(i % static_cast<std::size_t>(f1_span));
    spec.n = config.n;
    spec.t = config.t;
    spec.drop_above_nyquist = true;
  }
  parallel_for(count, jobs, [&](std::size_t i) { items[i].signal = additive_tone(items[i].spec); });
  return items;
}

std::vector<DatasetItem> dataset_generate(std::uint64_t seed) {
  DatasetConfig config;
  config.seed = seed;
  return dataset_generate(config);
}

}  // namespace scatterlab
