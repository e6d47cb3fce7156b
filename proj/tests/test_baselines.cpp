#include <doctest.h>

#include <cmath>
#include <random>

#include "scatterlab/baselines.hpp"
#include "scatterlab/synthesis.hpp"

using namespace scatterlab;

TEST_SUITE("baselines") {
  TEST_CASE("mel scale round trip") {
    CHECK(hz_to_mel(0.0) == 0.0);
    CHECK(hz_to_mel(700.0) == doctest::Approx(2595.0 * std::log10(2.0)));
    for (double hz : {10.0, 440.0, 5000.0, 11025.0}) CHECK(mel_to_hz(hz_to_mel(hz)) == doctest::Approx(hz));
  }

  TEST_CASE("mel filterbank rows have unit sum and increasing centres") {
    const MfccConfig cfg;
    const auto fb = mel_filterbank(cfg, 513);
    REQUIRE(fb.rows() == 40);
    REQUIRE(fb.cols() == 513);
    Eigen::Index last = -1;
    for (Eigen::Index m = 0; m < fb.rows(); ++m) {
      CHECK(fb.row(m).sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(fb.row(m).minCoeff() >= 0.0);
      Eigen::Index centre = 0;
      fb.row(m).maxCoeff(&centre);
      CHECK(centre > last);
      last = centre;
    }
  }

  TEST_CASE("a tone on a filter's centre bin excites that filter most") {
    const MfccConfig cfg;
    const auto fb = mel_filterbank(cfg, 513);
    for (Eigen::Index m : {5, 20, 35}) {
      Eigen::Index centre = 0;
      fb.row(m).maxCoeff(&centre);
      Eigen::Index best = 0;
      fb.col(centre).maxCoeff(&best);
      CHECK(best == m);
    }
  }

  TEST_CASE("degenerate mel bands are rejected") {
    MfccConfig cfg;
    cfg.n_mels = 128;
    CHECK_THROWS_AS(mel_filterbank(cfg, 65), std::invalid_argument);
    cfg.n_mels = 10;
    cfg.n_mfcc = 12;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    MfccConfig bad;
    bad.fmax = 0.7;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  }

  TEST_CASE("orthonormal DCT-II") {
    const std::size_t n = 16;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::vector<double> x(n);
    for (auto& v : x) v = g(rng);
    const auto y = dct2_orthonormal(x);
    double ex = 0.0;
    double ey = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ex += x[i] * x[i];
      ey += y[i] * y[i];
    }
    CHECK(ey == doctest::Approx(ex).epsilon(1e-12));
    const std::vector<double> c(n, 2.0);
    const auto yc = dct2_orthonormal(c);
    CHECK(yc[0] == doctest::Approx(2.0 * std::sqrt(16.0)));
    for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(yc[k]) < 1e-12);
  }

  TEST_CASE("MFCC defaults, zero signal and gain invariance") {
    AdditiveToneSpec s;
    s.alpha = 0.5;
    s.r = 0.3;
    const auto y = additive_tone(s);
    const auto c = mfcc(y);
    CHECK(c.size() == 12);

    const auto z = mfcc(std::vector<double>(1024, 0.0));
    CHECK(z[0] == doctest::Approx(std::log(1e-10) * std::sqrt(40.0)));
    for (std::size_t k = 1; k < z.size(); ++k) CHECK(std::abs(z[k]) < 1e-9);

    // White noise keeps every mel band well above the floor.
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    std::vector<double> x(1024);
    for (auto& v : x) v = g(rng);
    std::vector<double> scaled(x);
    for (auto& v : scaled) v *= 3.0;
    const auto a = mfcc(x);
    const auto b = mfcc(scaled);
    CHECK(b[0] - a[0] == doctest::Approx(std::log(9.0) * std::sqrt(40.0)));
    for (std::size_t k = 1; k < a.size(); ++k) CHECK(std::abs(b[k] - a[k]) < 1e-9);
    CHECK(mfcc(x) == a);
  }
}
