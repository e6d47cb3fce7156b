#include "scatterlab/experiments.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "scatterlab/parallel.hpp"

namespace scatterlab {
namespace {

std::vector<double> logspace(double lo, double hi, std::size_t steps) {
  if (!(lo > 0.0 && hi >= lo) || steps == 0) throw std::invalid_argument("invalid log-spaced axis");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    out[i] = lo * std::pow(hi / lo, f);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Masking

double snap_frequency(double nu, std::size_t signal_len) {
  return std::round(nu * static_cast<double>(signal_len)) / static_cast<double>(signal_len);
}

FilterbankSpec masking_filterbank_spec(const MaskingConfig& config) {
  FilterbankSpec spec;
  spec.family = config.family;
  spec.q = config.q;
  spec.j = config.j;
  spec.lambda_max = config.snap_to_bins ? snap_frequency(config.nu1, config.signal_len) : config.nu1;
  spec.t = config.t;
  spec.signal_len = config.signal_len;
  return spec;
}

std::vector<double> masking_profile(std::span<const double> signal, const Filterbank& fb, std::size_t lambda1,
                                    double eps) {
  if (lambda1 >= fb.size()) throw std::invalid_argument("lambda1 index out of range");
  std::vector<double> out(fb.size(), 0.0);
  if (lambda1 + 1 == fb.size()) return out;

  std::vector<ScatteringLayer> layers;
  layers.push_back(scalogram_power(signal, fb));
  const std::size_t parent[] = {lambda1};
  layers.push_back(propagate_layer(layers.front().select(parent), fb));
  const auto feature = invariants(signal, layers, fb);
  for (const auto& c : renormalize_second_order(feature, eps)) out[c.lambda2] = c.value;
  return out;
}

MaskingGridResult run_masking_grid(const MaskingConfig& config) {
  const Filterbank fb = build_filterbank(masking_filterbank_spec(config));
  MaskingGridResult result;
  result.config = config;
  result.nu1 = fb.spec().lambda_max;
  result.lambda1 = fb.nearest_index(result.nu1);
  result.lambdas.assign(fb.lambdas().begin(), fb.lambdas().end());
  result.amp_ratios = logspace(config.amp_min, config.amp_max, config.amp_steps);
  result.rel_freqs = logspace(config.rel_min, config.rel_max, config.freq_steps);

  for (const double rel : result.rel_freqs) {
    // f2 < f1 without loss of generality.
    double nu2 = result.nu1 * (1.0 - rel);
    if (config.snap_to_bins) nu2 = snap_frequency(nu2, config.signal_len);
    result.nu2.push_back(nu2);
    result.valid.push_back(nu2 > 0.0 && nu2 < 0.5 && nu2 != result.nu1);
  }

  const std::size_t na = result.amp_ratios.size();
  const std::size_t nf = result.rel_freqs.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  result.values.assign(na, std::vector<std::vector<double>>(nf, std::vector<double>(fb.size(), nan)));
  parallel_for(na * nf, config.jobs, [&](std::size_t cell) {
    const std::size_t a = cell / nf;
    const std::size_t f = cell % nf;
    if (!result.valid[f]) return;
    TwoToneSpec tone;
    tone.a1 = 1.0;
    tone.a2 = result.amp_ratios[a];
    tone.nu1 = result.nu1;
    tone.nu2 = result.nu2[f];
    tone.phi1 = config.phi1;
    tone.phi2 = config.phi2;
    tone.signal_len = config.signal_len;
    result.values[a][f] = masking_profile(two_tone(tone), fb, result.lambda1, config.eps);
  });

  for (const auto& plane : result.values) {
    for (const auto& profile : plane) {
      for (const double v : profile) {
        if (std::isfinite(v)) result.max_value = std::max(result.max_value, v);
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Depth decay

FilterbankSpec depth_filterbank_spec(const DepthConfig& config) {
  if (config.f1 < 1 || config.j < 1) throw std::invalid_argument("f1 and J must be >= 1");
  if (!(config.band_offset > 0.0 && config.band_offset < 0.5)) throw std::invalid_argument("band offset must lie in (0, 0.5)");
  FilterbankSpec spec;
  spec.family = WaveletFamily::ComplexShannon;
  spec.q = 1;
  spec.j = config.j;
  spec.lambda_max = static_cast<double>(config.f1) * std::exp2(config.j - 1) * (1.0 - config.band_offset) /
                    static_cast<double>(config.signal_len);
  spec.t = config.signal_len;
  spec.signal_len = config.signal_len;
  return spec;
}

int octave_bandwidth(int n) {
  if (n < 1) throw std::invalid_argument("component count must be >= 1");
  int k = 0;
  while ((1LL << k) < n) ++k;
  return k;
}

DepthCurve depth_curve(const Filterbank& fb, const DepthConfig& config, int n) {
  HarmonicStackSpec stack;
  stack.n = n;
  stack.a1 = config.amplitude;
  stack.f1 = config.f1;
  stack.signal_len = config.signal_len;
  const auto signal = harmonic_stack(stack);

  ScatterOptions options;
  options.max_order = config.max_depth;
  const auto result = scatter(signal, fb, options);

  DepthCurve curve;
  curve.n = n;
  curve.energy.assign(static_cast<std::size_t>(config.max_depth), 0.0);
  for (std::size_t m = 0; m < result.layers.size(); ++m) curve.energy[m] = layer_energy(result.layers[m]);
  curve.relative.assign(curve.energy.size(), 0.0);
  const double base = curve.energy.front();
  for (std::size_t m = 0; m < curve.energy.size(); ++m) {
    curve.relative[m] = base > 0.0 ? curve.energy[m] / base : 0.0;
    if (curve.relative[m] > config.threshold) curve.effective_depth = static_cast<int>(m) + 1;
  }
  return curve;
}

DepthDecayResult run_depth_decay(const DepthConfig& config) {
  if (config.max_depth < 1) throw std::invalid_argument("max depth must be >= 1");
  const Filterbank fb = build_filterbank(depth_filterbank_spec(config));
  DepthDecayResult result;
  result.config = config;
  result.lambda_max = fb.spec().lambda_max;
  result.curves.resize(config.ns.size());
  parallel_for(config.ns.size(), config.jobs,
               [&](std::size_t i) { result.curves[i] = depth_curve(fb, config, config.ns[i]); });
  return result;
}

TheoremReport verify_theorem(const std::vector<int>& ns, double tolerance, DepthConfig config) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  config.ns = ns;
  const auto decay = run_depth_decay(config);
  TheoremReport report;
  report.tolerance = tolerance;
  for (const auto& curve : decay.curves) {
    const int bound = std::max(1, octave_bandwidth(curve.n));
    for (std::size_t i = 0; i < curve.relative.size(); ++i) {
      TheoremEntry entry{curve.n, static_cast<int>(i) + 1, bound, curve.relative[i], false};
      if (entry.m > bound) {
        report.max_violation = std::max(report.max_violation, entry.relative);
        entry.violation = entry.relative > tolerance;
      }
      if (entry.violation) report.violations.push_back(entry);
      report.entries.push_back(entry);
    }
  }
  report.pass = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Embedding

EmbeddingConfig EmbeddingConfig::desk_scale() {
  EmbeddingConfig config;
  config.dataset.alpha_steps = 20;
  config.dataset.r_steps = 20;
  config.dataset.f1_mode = FundamentalMode::Cycle;
  config.k = 50;
  return config;
}

EmbeddingConfig EmbeddingConfig::full_scale(std::uint64_t seed) {
  EmbeddingConfig config;
  config.dataset.f1_mode = FundamentalMode::Random;
  config.dataset.seed = seed;
  config.k = 100;
  return config;
}

Eigen::MatrixXd label_axis_correlation(const Embedding& embedding, const std::vector<ToneLabel>& labels) {
  const auto n = embedding.rows.size();
  std::vector<std::vector<double>> params(3, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = labels.at(embedding.rows[i]);
    params[0][i] = l.f1;
    params[1][i] = l.alpha;
    params[2][i] = l.r;
  }
  Eigen::MatrixXd rho(3, embedding.coords.cols());
  for (Eigen::Index a = 0; a < embedding.coords.cols(); ++a) {
    std::vector<double> axis(n);
    for (std::size_t i = 0; i < n; ++i) axis[i] = embedding.coords(static_cast<Eigen::Index>(i), a);
    for (std::size_t p = 0; p < 3; ++p) rho(static_cast<Eigen::Index>(p), a) = spearman(params[p], axis);
  }
  return rho;
}

std::vector<ToneLabel> shuffled_labels(const std::vector<ToneLabel>& labels, std::uint64_t seed) {
  std::vector<ToneLabel> out = labels;
  std::mt19937_64 rng(seed);
  for (std::size_t i = out.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(i - 1)));
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

Eigen::MatrixXd scattering_features(const std::vector<DatasetItem>& items, const Filterbank& fb, int max_order,
                                    int jobs, std::vector<std::string>* columns) {
  if (items.empty()) throw std::invalid_argument("no signals to scatter");
  ScatterOptions options;
  options.max_order = max_order;
  std::vector<std::vector<double>> rows(items.size());
  ScatteringFeature first;
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    auto result = scatter(items[i].signal, fb, options);
    rows[i] = result.feature.flatten();
    if (i == 0) first = std::move(result.feature);
  });
  if (columns) {
    columns->assign({"S0"});
    for (const auto& p : first.paths) columns->push_back(path_label(p, fb));
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < rows[i].size(); ++c) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
  }
  return x;
}

Eigen::MatrixXd mfcc_features(const std::vector<DatasetItem>& items, const MfccConfig& config, int jobs) {
  if (items.empty()) throw std::invalid_argument("no signals for MFCC");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(items.size()), config.n_mfcc);
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    const auto c = mfcc(items[i].signal, config);
    for (std::size_t k = 0; k < c.size(); ++k) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = c[k];
  });
  return x;
}

Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out = x;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double mean = x.col(c).mean();
    const double sd = std::sqrt((x.col(c).array() - mean).square().mean());
    if (sd > 0.0) {
      out.col(c) = ((x.col(c).array() - mean) / sd).matrix();
    } else {
      out.col(c).setZero();
    }
  }
  return out;
}

FeatureSetReport analyse_feature_set(std::string name, std::vector<std::string> columns, Eigen::MatrixXd features,
                                     const std::vector<ToneLabel>& labels, const EmbeddingConfig& config) {
  FeatureSetReport report;
  report.name = std::move(name);
  report.columns = std::move(columns);
  report.features = std::move(features);
  const Eigen::MatrixXd input = config.standardize ? standardize_columns(report.features) : report.features;
  report.embedding = isomap(input, config.k, config.dim, config.jobs);
  report.rho = label_axis_correlation(report.embedding, labels);
  report.shuffled_rho = label_axis_correlation(report.embedding, shuffled_labels(labels, config.shuffle_seed));
  report.assignment = greedy_axis_assignment(report.rho.cwiseAbs());
  return report;
}

EmbeddingReport run_embedding_experiment(const EmbeddingConfig& config) {
  const auto items = dataset_generate(config.dataset, config.jobs);
  EmbeddingReport report;
  report.config = config;
  for (const auto& item : items) {
    report.labels.push_back({static_cast<double>(item.spec.f1), item.spec.alpha, item.spec.r});
  }

  FilterbankSpec spec = config.scattering;
  spec.signal_len = config.dataset.t;
  const Filterbank fb = build_filterbank(spec);
  std::vector<std::string> scat_columns;
  auto scat = scattering_features(items, fb, config.max_order, config.jobs, &scat_columns);
  report.scattering = analyse_feature_set("scattering", std::move(scat_columns), std::move(scat), report.labels, config);

  std::vector<std::string> mfcc_columns;
  for (int k = 0; k < config.mfcc.n_mfcc; ++k) mfcc_columns.push_back(fmt::format("mfcc{}", k));
  report.mfcc = analyse_feature_set("mfcc", std::move(mfcc_columns), mfcc_features(items, config.mfcc, config.jobs),
                                    report.labels, config);
  return report;
}

}  // namespace scatterlab
