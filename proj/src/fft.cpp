#include "scatterlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace scatterlab {
namespace {

struct Plans {
  fftw_plan r2c;
  fftw_plan fwd;
  fftw_plan inv;
};

// FFTW's planner is not thread-safe; plans are immortal once created.
// The inverse plan is in place, the others out of place; execution must match.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(std::size_t n) {
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const int len = static_cast<int>(n);
  double* rin = fftw_alloc_real(n);
  fftw_complex* a = fftw_alloc_complex(n);
  fftw_complex* b = fftw_alloc_complex(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  Plans p{fftw_plan_dft_r2c_1d(len, rin, a, flags),
          fftw_plan_dft_1d(len, a, b, FFTW_FORWARD, flags),
          fftw_plan_dft_1d(len, a, a, FFTW_BACKWARD, flags)};
  fftw_free(rin);
  fftw_free(a);
  fftw_free(b);
  if (!p.r2c || !p.fwd || !p.inv) throw std::runtime_error("FFTW planning failed");
  return cache.emplace(n, p).first->second;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("FFT size must be positive");
  const Plans& p = plans_for(n);
  r2c_ = p.r2c;
  fwd_ = p.fwd;
  inv_ = p.inv;
}

void Fft::forward_real_half(std::span<const double> in, std::span<Complex> out) const {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FFT length mismatch");
  // r2c writes n/2+1 bins; FFTW never modifies the input of an r2c transform
  // planned without FFTW_DESTROY_INPUT.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_), const_cast<double*>(in.data()),
                       as_fftw(out.data()));
  for (std::size_t k = n_ / 2 + 1; k < n_; ++k) out[k] = 0.0;
}

void Fft::forward(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FFT length mismatch");
  if (in.data() == out.data()) throw std::invalid_argument("forward FFT must be out of place");
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(const_cast<Complex*>(in.data())),
                   as_fftw(out.data()));
}

void Fft::inverse(std::span<Complex> data) const {
  if (data.size() != n_) throw std::invalid_argument("FFT length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(inv_), as_fftw(data.data()), as_fftw(data.data()));
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& z : data) z *= scale;
}

const char* fft_backend_version() { return fftw_version; }

}  // namespace scatterlab
