#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scatterlab {

using Complex = std::complex<double>;

// Thin wrapper around cached FFTW plans. Plans are created once per size
// under a lock; execution is reentrant, so one Fft may be shared by workers.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  // Full forward DFT of a real signal: out[k] = sum_t x[t] exp(-2 pi i k t / n).
  // Only bins 0..n/2 are computed; bins above n/2 are set to zero, which is
  // all an analytic filter ever reads.
  void forward_real_half(std::span<const double> in, std::span<Complex> out) const;

  // Full complex forward DFT (no normalization).
  void forward(std::span<const Complex> in, std::span<Complex> out) const;

  // Inverse DFT in place, normalized by 1/n.
  void inverse(std::span<Complex> data) const;

 private:
  std::size_t n_;
  void* r2c_;
  void* fwd_;
  void* inv_;
};

// Frequency of DFT bin k in cycles/sample, in (-0.5, 0.5]. Bin n/2 maps to +0.5.
inline double bin_frequency(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<double>(k) / static_cast<double>(n)
                    : (static_cast<double>(k) - static_cast<double>(n)) / static_cast<double>(n);
}

// Version string of the FFT backend.
const char* fft_backend_version();

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace scatterlab
