#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace scatterlab {

struct TwoToneSpec {
  double a1 = 1.0;
  double a2 = 1.0;
  double nu1 = 0.2;  // cycles/sample
  double nu2 = 0.19;
  double phi1 = 0.0;
  double phi2 = 0.0;
  std::size_t signal_len = 1024;
};

// y[t] = a1 cos(2π ν1 t + φ1) + a2 cos(2π ν2 t + φ2)
std::vector<double> two_tone(const TwoToneSpec& spec);

struct AdditiveToneSpec {
  double alpha = 1.0;   // Fourier decay exponent
  double r = 0.0;       // odd-to-even amplitude difference
  int f1 = 16;          // fundamental, cycles per window
  int n = 32;           // harmonic count
  std::size_t t = 1024;  // window length, samples
  // When false, any harmonic at or above Nyquist is an error instead of being dropped.
  bool drop_above_nyquist = true;
};

double additive_amplitude(int harmonic, double alpha, double r);

// Hann-windowed harmonic tone: Σ_n (1 + (-1)^n r)/n^α cos(2π n f1 t / T) · hann(t).
std::vector<double> additive_tone(const AdditiveToneSpec& spec);

struct HarmonicStackSpec {
  int n = 1;
  double a1 = 1.0;
  double phi1 = 0.0;
  int f1 = 8;  // cycles per window
  std::size_t signal_len = 4096;
};

// Unwindowed Σ_{n=1}^{N} a1 cos(2π n f1 t / L + φ1); periodic on the frame.
std::vector<double> harmonic_stack(const HarmonicStackSpec& spec);

enum class FundamentalMode { Random, Cycle };

struct DatasetConfig {
  std::size_t alpha_steps = 50;
  std::size_t r_steps = 50;
  double alpha_min = 0.0;
  double alpha_max = 2.0;
  double r_min = 0.0;
  double r_max = 1.0;
  int f1_min = 12;
  int f1_max = 24;
  int n = 32;
  std::size_t t = 1024;
  FundamentalMode f1_mode = FundamentalMode::Random;
  std::uint64_t seed = 0;
};

struct DatasetItem {
  AdditiveToneSpec spec;
  std::vector<double> signal;
};

// Grid over (α, r), α-major. Fundamentals are drawn from a seeded
// mt19937_64 (Random) or cycle through f1_min..f1_max (Cycle).
std::vector<DatasetItem> dataset_generate(const DatasetConfig& config, int jobs = 1);

// Full-scale dataset: 50×50 grid, f1 uniform in 12..24, T = 1024, N = 32.
std::vector<DatasetItem> dataset_generate(std::uint64_t seed);

// Uniform integer in [lo, hi] by rejection sampling; platform-independent.
int uniform_int(std::mt19937_64& rng, int lo, int hi);

}  // namespace scatterlab
