#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "scatterlab/experiments.hpp"
#include "scatterlab/io.hpp"
#include "scatterlab/report.hpp"

using namespace scatterlab;
namespace fs = std::filesystem;

namespace {

MaskingConfig small_masking() {
  MaskingConfig c;
  c.amp_steps = 3;
  c.freq_steps = 3;
  c.rel_min = 0.01;
  c.rel_max = 1.0;
  return c;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("masking filterbank puts the first tone at grid index 0") {
    MaskingConfig c;
    CHECK(snap_frequency(0.2, 8192) == 1638.0 / 8192);
    const auto spec = masking_filterbank_spec(c);
    CHECK(spec.lambda_max == 1638.0 / 8192);
    CHECK(spec.q * spec.j == 40);
    const auto fb = build_filterbank(spec);
    CHECK(fb.nearest_index(spec.lambda_max) == 0);
    c.snap_to_bins = false;
    CHECK(masking_filterbank_spec(c).lambda_max == 0.2);
  }

  TEST_CASE("masking profile of a single tone is negligible") {
    const MaskingConfig c;
    const auto fb = build_filterbank(masking_filterbank_spec(c));
    const double nu1 = fb.spec().lambda_max;
    TwoToneSpec single{1.0, 0.0, nu1, nu1 * 0.95, 0.0, 0.0, c.signal_len};
    TwoToneSpec pair = single;
    pair.a2 = 1.0;
    pair.nu2 = snap_frequency(nu1 * 0.95, c.signal_len);
    const auto s = masking_profile(two_tone(single), fb, 0);
    const auto p = masking_profile(two_tone(pair), fb, 0);
    const double peak = *std::max_element(p.begin(), p.end());
    CHECK(peak > 1e-3);
    CHECK(s[0] == 0.0);
    for (double v : s) CHECK(v <= 1e-20 * peak);
    const auto last = masking_profile(two_tone(pair), fb, fb.size() - 1);
    for (double v : last) CHECK(v == 0.0);
    CHECK_THROWS_AS(masking_profile(two_tone(pair), fb, fb.size()), std::invalid_argument);
  }

  TEST_CASE("masking coefficients do not depend on the averaging scale") {
    // S is a global time average, so the low-pass only enters through its DC gain of 1.
    MaskingConfig c;
    const auto fb_long = build_filterbank(masking_filterbank_spec(c));
    c.t = 256;
    const auto fb_short = build_filterbank(masking_filterbank_spec(c));
    const double nu1 = fb_long.spec().lambda_max;
    TwoToneSpec pair{1.0, 0.5, nu1, snap_frequency(nu1 * 0.97, c.signal_len), 0.0, 0.0, c.signal_len};
    const auto y = two_tone(pair);
    const auto a = masking_profile(y, fb_long, 0);
    const auto b = masking_profile(y, fb_short, 0);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == a[i]);
  }

  TEST_CASE("masking grid layout, validity and amplitude scaling") {
    auto c = small_masking();
    c.rel_max = 1.5;  // ν2 < 0 for the last column
    const auto r = run_masking_grid(c);
    REQUIRE(r.amp_ratios.size() == 3);
    REQUIRE(r.rel_freqs.size() == 3);
    CHECK(r.amp_ratios.front() == doctest::Approx(1e-3));
    CHECK(r.amp_ratios.back() == doctest::Approx(1.0));
    CHECK(r.valid == std::vector<bool>{true, true, false});
    CHECK(r.lambda1 == 0);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t f = 0; f < 3; ++f) {
        REQUIRE(r.values[a][f].size() == 40);
        for (double v : r.values[a][f]) {
          if (r.valid[f]) {
            CHECK(v >= 0.0);
          } else {
            CHECK(std::isnan(v));
          }
        }
      }
    }
    CHECK(r.max_value > 0.0);
    for (std::size_t f = 0; f < 2; ++f) {
      for (double v : r.values[0][f]) CHECK(v < 1e-4 * r.max_value);
    }
  }

  TEST_CASE("masking grid is independent of the worker count") {
    auto c = small_masking();
    const auto a = run_masking_grid(c);
    c.jobs = 3;
    const auto b = run_masking_grid(c);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      for (std::size_t f = 0; f < a.values[i].size(); ++f) {
        for (std::size_t l = 0; l < a.values[i][f].size(); ++l) {
          const double x = a.values[i][f][l];
          const double y = b.values[i][f][l];
          CHECK((x == y || (std::isnan(x) && std::isnan(y))));
        }
      }
    }
  }

  TEST_CASE("octave bandwidth") {
    CHECK(octave_bandwidth(1) == 0);
    CHECK(octave_bandwidth(2) == 1);
    CHECK(octave_bandwidth(3) == 2);
    CHECK(octave_bandwidth(4) == 2);
    CHECK(octave_bandwidth(5) == 3);
    CHECK(octave_bandwidth(128) == 7);
    CHECK_THROWS_AS(octave_bandwidth(0), std::invalid_argument);
  }

  TEST_CASE("depth filterbank keeps harmonics off band edges") {
    const DepthConfig c;
    const auto fb = build_filterbank(depth_filterbank_spec(c));
    CHECK(fb.spec().lambda_max * 4096 == doctest::Approx(510.0));
    for (std::size_t j = 0; j < fb.size(); ++j) {
      const double edge = fb.lambda(j) * 4096 / 8;  // in units of the fundamental
      CHECK(std::abs(edge - std::round(edge)) > 1e-3);
    }
  }

  TEST_CASE("layer energy does not increase with depth at normalized amplitude") {
    DepthConfig c;
    c.ns = {1, 2, 3, 4, 8, 16, 32};
    for (const int n : c.ns) {
      auto cfg = c;
      cfg.amplitude = 1.0 / n;
      const auto fb = build_filterbank(depth_filterbank_spec(cfg));
      const auto curve = depth_curve(fb, cfg, n);
      CAPTURE(n);
      for (std::size_t m = 1; m < curve.energy.size(); ++m) CHECK(curve.energy[m] <= curve.energy[m - 1]);
      for (double v : curve.relative) CHECK(v >= 0.0);
    }
  }

  TEST_CASE("depth decay curves") {
    DepthConfig c;
    c.ns = {1, 2, 4, 8};
    const auto r = run_depth_decay(c);
    REQUIRE(r.curves.size() == 4);
    CHECK(r.curves[0].effective_depth == 1);
    CHECK(r.curves[0].relative[0] == 1.0);
    CHECK(r.curves[0].relative[1] < 1e-100);
    for (const auto& curve : r.curves) CHECK(curve.energy.size() == 8);
    c.jobs = 2;
    const auto again = run_depth_decay(c);
    for (std::size_t i = 0; i < 4; ++i) CHECK(again.curves[i].energy == r.curves[i].energy);
  }

  TEST_CASE("theorem report structure") {
    const auto report = verify_theorem({1, 3, 4}, 1e-8);
    CHECK(report.pass);
    CHECK(report.entries.size() == 3 * 8);
    CHECK(report.entries[0].bound == 1);
    CHECK(report.entries[8].bound == 2);
    CHECK(report.entries[8].n == 3);
    CHECK(report.max_violation <= 1e-8);
    CHECK_THROWS_AS(verify_theorem({1}, 0.0), std::invalid_argument);
  }

  TEST_CASE("label helpers") {
    std::vector<ToneLabel> labels;
    for (int i = 0; i < 20; ++i) labels.push_back({static_cast<double>(i), 0.1 * i, 0.0});
    const auto s = shuffled_labels(labels, 4);
    CHECK(s.size() == labels.size());
    std::vector<double> f;
    for (const auto& l : s) f.push_back(l.f1);
    std::sort(f.begin(), f.end());
    for (int i = 0; i < 20; ++i) CHECK(f[static_cast<std::size_t>(i)] == i);
    const auto s2 = shuffled_labels(labels, 4);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i].f1 == s2[i].f1);

    Eigen::MatrixXd x(4, 2);
    x << 1, 5, 2, 5, 3, 5, 4, 5;
    const auto z = standardize_columns(x);
    CHECK(z.col(0).mean() == doctest::Approx(0.0));
    CHECK(z.col(0).squaredNorm() / 4 == doctest::Approx(1.0));
    CHECK(z.col(1).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("embedding pipeline on the desk-scale grid") {
    auto c = EmbeddingConfig::desk_scale();
    CHECK(c.dataset.alpha_steps * c.dataset.r_steps >= 100);
    const auto r = run_embedding_experiment(c);
    CHECK(r.labels.size() == 400);
    CHECK(r.scattering.features.cols() == 37);
    CHECK(r.scattering.columns.size() == 37);
    CHECK(r.mfcc.features.cols() == 12);
    for (const auto* set : {&r.scattering, &r.mfcc}) {
      CHECK(set->rho.rows() == 3);
      CHECK(set->rho.cols() == 3);
      CHECK(set->rho.cwiseAbs().maxCoeff() <= 1.0);
      CHECK(set->shuffled_rho.cwiseAbs().maxCoeff() < 0.2);
      CHECK(set->embedding.eigenvalues.head(3).minCoeff() >= 0.0);
      std::vector<std::size_t> axes;
      for (const auto& a : set->assignment) axes.push_back(a.axis);
      std::sort(axes.begin(), axes.end());
      CHECK(axes == std::vector<std::size_t>{0, 1, 2});
    }
    c.jobs = 3;
    const auto again = run_embedding_experiment(c);
    CHECK(again.scattering.embedding.coords == r.scattering.embedding.coords);
    CHECK(again.mfcc.rho == r.mfcc.rho);
  }

  TEST_CASE("report writers") {
    const auto dir = fs::temp_directory_path() / "scatterlab_report_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto masking = run_masking_grid(small_masking());
    const auto panels = masking_panel_indices(masking);
    CHECK(panels.size() == 10);  // 39 slices below λ1 span ten partial octaves
    for (std::size_t i = 0; i < panels.size(); ++i) {
      CHECK(panels[i] >= 1 + 4 * i);
      CHECK(panels[i] < 5 + 4 * i);
    }
    const auto files = write_masking_outputs(dir, masking);
    CHECK(files == std::vector<std::string>{"masking.csv", "masking.svg"});
    const auto csv = read_csv(dir / "masking.csv");
    CHECK(csv.rows.size() == 3 * 2 * 39);  // ν2 = 0 column is invalid

    DepthConfig dc;
    dc.ns = {1, 2};
    write_depth_outputs(dir, run_depth_decay(dc));
    const auto decay = read_csv(dir / "depth_decay.csv");
    CHECK(decay.header == std::vector<std::string>{"n", "m", "energy", "relative"});
    CHECK(decay.rows.size() == 16);
    write_manifest(dir, "test", {{"seed", 7}}, 0.5, files);
    const auto manifest = read_json(dir / "manifest.json");
    CHECK(manifest["seed"] == 7);
    CHECK(manifest["versions"].contains("fft"));
  }
}
