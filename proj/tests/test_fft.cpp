#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "scatterlab/fft.hpp"

using namespace scatterlab;

TEST_SUITE("fft") {
  TEST_CASE("real forward transform matches the direct DFT on bins 0..n/2") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (std::size_t n : {8u, 64u, 256u}) {
      std::vector<double> x(n);
      for (auto& v : x) v = g(rng);
      std::vector<Complex> out(n);
      Fft(n).forward_real_half(x, out);
      const auto ref = oracle::dft(x);
      for (std::size_t k = 0; k <= n / 2; ++k) CHECK(std::abs(out[k] - ref[k]) < 1e-10 * static_cast<double>(n));
      for (std::size_t k = n / 2 + 1; k < n; ++k) CHECK(out[k] == Complex(0.0));
    }
  }

  TEST_CASE("complex forward and inverse round trip") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    const std::size_t n = 128;
    std::vector<Complex> x(n);
    for (auto& v : x) v = {g(rng), g(rng)};
    std::vector<Complex> y(n);
    Fft fft(n);
    fft.forward(x, y);
    const auto ref = oracle::dft(std::vector<oracle::cd>(x.begin(), x.end()));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(y[k] - ref[k]) < 1e-9);
    fft.inverse(y);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(y[k] - x[k]) < 1e-12);
  }

  TEST_CASE("length mismatches and in-place forward are rejected") {
    Fft fft(16);
    std::vector<double> x(8);
    std::vector<Complex> out(16);
    CHECK_THROWS_AS(fft.forward_real_half(x, out), std::invalid_argument);
    CHECK_THROWS_AS(fft.forward(out, out), std::invalid_argument);
    CHECK_THROWS_AS(Fft(0), std::invalid_argument);
  }

  TEST_CASE("bin frequency convention") {
    CHECK(bin_frequency(0, 8) == 0.0);
    CHECK(bin_frequency(2, 8) == 0.25);
    CHECK(bin_frequency(4, 8) == 0.5);
    CHECK(bin_frequency(5, 8) == -0.375);
    CHECK(is_power_of_two(1024));
    CHECK_FALSE(is_power_of_two(1000));
    CHECK_FALSE(is_power_of_two(0));
  }
}
