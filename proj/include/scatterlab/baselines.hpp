#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace scatterlab {

struct MfccConfig {
  int n_mels = 40;
  int n_mfcc = 12;
  double fmin = 0.0;  // cycles/sample
  double fmax = 0.5;  // cycles/sample
  double sample_rate = 22050.0;  // nominal, only used for the mel warp
  double log_floor = 1e-10;
};

void validate(const MfccConfig& config);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular mel filters over `n_fft_bins` one-sided bins (bins span 0..Nyquist),
// each row normalized to unit sum.
Eigen::MatrixXd mel_filterbank(const MfccConfig& config, std::size_t n_fft_bins);

// Whole-signal MFCC: power spectrum -> mel energies -> log -> orthonormal DCT-II.
std::vector<double> mfcc(std::span<const double> signal, const MfccConfig& config = {});

// Orthonormal DCT-II of x.
std::vector<double> dct2_orthonormal(std::span<const double> x);

}  // namespace scatterlab
