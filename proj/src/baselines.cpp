#include "scatterlab/baselines.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "scatterlab/fft.hpp"

namespace scatterlab {

void validate(const MfccConfig& config) {
  if (config.n_mels < 1 || config.n_mfcc < 1) throw std::invalid_argument("n_mels and n_mfcc must be >= 1");
  if (config.n_mfcc > config.n_mels) throw std::invalid_argument("n_mfcc must not exceed n_mels");
  if (!(config.fmin >= 0.0 && config.fmax <= 0.5 && config.fmin < config.fmax)) {
    throw std::invalid_argument("need 0 <= fmin < fmax <= 0.5 cycles/sample");
  }
  if (!(config.sample_rate > 0.0)) throw std::invalid_argument("sample_rate must be positive");
  if (!(config.log_floor > 0.0)) throw std::invalid_argument("log floor must be positive");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

Eigen::MatrixXd mel_filterbank(const MfccConfig& config, std::size_t n_fft_bins) {
  validate(config);
  if (n_fft_bins < 2) throw std::invalid_argument("need at least two FFT bins");
  const auto mels = static_cast<std::size_t>(config.n_mels);
  const double bin_hz = config.sample_rate / (2.0 * static_cast<double>(n_fft_bins - 1));

  const double lo = hz_to_mel(config.fmin * config.sample_rate);
  const double hi = hz_to_mel(config.fmax * config.sample_rate);
  std::vector<double> edges(mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(mels + 1));
  }
  // Centres are edges[1..mels]; two of them on one FFT bin make a degenerate band.
  for (std::size_t m = 1; m < mels; ++m) {
    const long a = std::lround(edges[m] / bin_hz);
    const long b = std::lround(edges[m + 1] / bin_hz);
    if (a == b) {
      throw std::invalid_argument(
          fmt::format("mel bands {} and {} are centred on the same FFT bin {}", m - 1, m, a));
    }
  }

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(mels), static_cast<Eigen::Index>(n_fft_bins));
  for (std::size_t m = 0; m < mels; ++m) {
    const double left = edges[m];
    const double centre = edges[m + 1];
    const double right = edges[m + 2];
    for (std::size_t k = 0; k < n_fft_bins; ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      const double w = std::min((f - left) / (centre - left), (right - f) / (right - centre));
      if (w > 0.0) fb(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = w;
    }
    const double area = fb.row(static_cast<Eigen::Index>(m)).sum();
    if (!(area > 0.0)) throw std::invalid_argument(fmt::format("mel band {} covers no FFT bin", m));
    fb.row(static_cast<Eigen::Index>(m)) /= area;
  }
  return fb;
}

std::vector<double> dct2_orthonormal(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * std::cos(std::numbers::pi * static_cast<double>(k) * (2.0 * static_cast<double>(i) + 1.0) /
                             (2.0 * static_cast<double>(n)));
    }
    out[k] = acc * std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
  }
  return out;
}

std::vector<double> mfcc(std::span<const double> signal, const MfccConfig& config) {
  validate(config);
  const std::size_t n = signal.size();
  if (n < 2) throw std::invalid_argument("signal too short for MFCC");
  const std::size_t bins = n / 2 + 1;

  std::vector<Complex> spectrum(n);
  if (is_power_of_two(n)) {
    Fft(n).forward_real_half(signal, spectrum);
  } else {
    std::vector<Complex> in(signal.begin(), signal.end());
    Fft(n).forward(in, spectrum);
  }
  Eigen::VectorXd power(static_cast<Eigen::Index>(bins));
  for (std::size_t k = 0; k < bins; ++k) power(static_cast<Eigen::Index>(k)) = std::norm(spectrum[k]);

  const Eigen::VectorXd mel = mel_filterbank(config, bins) * power;
  std::vector<double> logmel(static_cast<std::size_t>(mel.size()));
  for (std::size_t m = 0; m < logmel.size(); ++m) {
    logmel[m] = std::log(std::max(mel(static_cast<Eigen::Index>(m)), config.log_floor));
  }
  auto coeffs = dct2_orthonormal(logmel);
  coeffs.resize(static_cast<std::size_t>(config.n_mfcc));
  return coeffs;
}

}  // namespace scatterlab
