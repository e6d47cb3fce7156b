#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scatterlab/fft.hpp"

namespace scatterlab {

enum class WaveletFamily { Morlet, Gammatone, ComplexShannon };

std::string_view to_string(WaveletFamily family);
// Accepts "morlet", "gammatone", "shannon" / "complex-shannon" (case-insensitive).
WaveletFamily parse_wavelet_family(std::string_view name);

/// Mother wavelet with unit center frequency, evaluated in the frequency
/// domain. ω is normalized frequency (ω = ν/λ). Every family is analytic
/// (zero for ω <= 0).
///
///  - Morlet: Gaussian bump at ω = 1 minus a Gaussian at ω = 0 that cancels
///    the DC value; scaled so ψ̂(1) = 1.
///  - Gammatone: order-4 resonance (1 + iB(ω-1))^-4, tapered to zero at DC by
///    sin²(πω/2) on (0, 1). Peak magnitude is exactly 1 at ω = 1.
///  - ComplexShannon: indicator of (1, 2^(1/Q)], i.e. one octave when Q = 1.
///
/// For Morlet and Gammatone the width parameter is calibrated numerically so
/// the equivalent rectangular bandwidth equals 1/Q.
class MotherWavelet {
 public:
  MotherWavelet(WaveletFamily family, int q);

  Complex operator()(double omega) const;

  WaveletFamily family() const { return family_; }
  int q() const { return q_; }
  // σ (Morlet), B (Gammatone) or the upper band edge (ComplexShannon).
  double shape() const { return shape_; }

 private:
  WaveletFamily family_;
  int q_;
  double shape_;
  double scale_ = 1.0;
  double dc_weight_ = 0.0;
};

Complex evaluate_wavelet_hat(WaveletFamily family, int q, double omega);

// ∫ |ψ̂|² / max |ψ̂|² dω over ω > 0, by composite Simpson quadrature.
double wavelet_erb(const MotherWavelet& psi);

std::vector<double> build_frequency_grid(double lambda_max, int q, int j);

struct FilterbankSpec {
  WaveletFamily family = WaveletFamily::Morlet;
  int q = 1;
  int j = 8;
  double lambda_max = 0.25;
  std::size_t t = 1024;
  std::size_t signal_len = 1024;
};

// Throws std::invalid_argument naming the violated constraint.
void validate(const FilterbankSpec& spec);

class Filterbank {
 public:
  Filterbank(FilterbankSpec spec, std::vector<double> lambdas, std::vector<std::vector<Complex>> filters,
             std::vector<double> lowpass_hat);

  const FilterbankSpec& spec() const { return spec_; }
  std::size_t size() const { return lambdas_.size(); }
  std::size_t signal_len() const { return spec_.signal_len; }
  std::span<const double> lambdas() const { return lambdas_; }
  double lambda(std::size_t j) const { return lambdas_[j]; }
  std::span<const Complex> filter(std::size_t j) const { return filters_[j]; }
  std::span<const double> lowpass_hat() const { return lowpass_hat_; }

  // Index of the grid frequency closest to nu on a log scale.
  std::size_t nearest_index(double nu) const;

 private:
  FilterbankSpec spec_;
  std::vector<double> lambdas_;
  std::vector<std::vector<Complex>> filters_;
  std::vector<double> lowpass_hat_;
};

Filterbank build_filterbank(const FilterbankSpec& spec);

}  // namespace scatterlab
