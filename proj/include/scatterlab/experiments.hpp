#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scatterlab/baselines.hpp"
#include "scatterlab/filterbank.hpp"
#include "scatterlab/manifold.hpp"
#include "scatterlab/scattering.hpp"
#include "scatterlab/stats.hpp"
#include "scatterlab/synthesis.hpp"

namespace scatterlab {

// ---------------------------------------------------------------------------
// Two-tone masking

struct MaskingConfig {
  WaveletFamily family = WaveletFamily::Gammatone;
  int q = 4;
  int j = 10;  // first octave holds λ1, the remaining nine lie below it
  double nu1 = 0.2;
  std::size_t signal_len = 8192;
  std::size_t t = 8192;
  std::size_t amp_steps = 32;
  std::size_t freq_steps = 32;
  double amp_min = 1e-3;
  double amp_max = 1.0;
  double rel_min = 1e-3;
  double rel_max = 1.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  // Round both tone frequencies to DFT bins so circular convolution is exact.
  bool snap_to_bins = true;
  double eps = 1e-12;
  int jobs = 1;
};

// Filterbank for a masking run: λ_max is ν1 (snapped), so λ1 is grid index 0.
FilterbankSpec masking_filterbank_spec(const MaskingConfig& config);
double snap_frequency(double nu, std::size_t signal_len);

// S̃2(λ1, λ2) for every grid index λ2 (entries with λ2 <= λ1 are 0).
std::vector<double> masking_profile(std::span<const double> signal, const Filterbank& fb, std::size_t lambda1,
                                    double eps = 1e-12);

struct MaskingGridResult {
  MaskingConfig config;
  double nu1 = 0.0;  // after snapping
  std::size_t lambda1 = 0;
  std::vector<double> lambdas;      // full grid
  std::vector<double> amp_ratios;   // a2/a1, log-spaced
  std::vector<double> rel_freqs;    // requested |ν2-ν1|/ν1, log-spaced
  std::vector<double> nu2;          // per rel_freq, after snapping
  std::vector<bool> valid;          // per rel_freq
  // values[a][f][λ2 index]; invalid columns hold NaN.
  std::vector<std::vector<std::vector<double>>> values;
  double max_value = 0.0;
};

MaskingGridResult run_masking_grid(const MaskingConfig& config);

// ---------------------------------------------------------------------------
// Depth decay and the bandwidth bound

struct DepthConfig {
  std::vector<int> ns{1, 2, 4, 8, 16, 32, 64, 128};
  int f1 = 8;  // fundamental, cycles per frame
  std::size_t signal_len = 4096;
  int j = 7;
  int max_depth = 8;
  double amplitude = 1.0;
  double threshold = 1e-8;
  // Octave band edges sit at f1·2^k·(1 - offset) so no harmonic lands on an edge.
  double band_offset = 1.0 / 256.0;
  int jobs = 1;
};

// Shannon Q=1 filterbank aligned to the harmonic grid of `config`.
FilterbankSpec depth_filterbank_spec(const DepthConfig& config);

// Smallest k with 2^k >= n.
int octave_bandwidth(int n);

struct DepthCurve {
  int n = 0;
  std::vector<double> energy;    // index m-1, m = 1..max_depth
  std::vector<double> relative;  // energy / energy(U_1)
  int effective_depth = 0;       // last m with relative > threshold
};

struct DepthDecayResult {
  DepthConfig config;
  double lambda_max = 0.0;
  std::vector<DepthCurve> curves;
};

DepthCurve depth_curve(const Filterbank& fb, const DepthConfig& config, int n);
DepthDecayResult run_depth_decay(const DepthConfig& config);

struct TheoremEntry {
  int n = 0;
  int m = 0;
  int bound = 0;  // max(1, ceil(log2 N))
  double relative = 0.0;
  bool violation = false;
};

struct TheoremReport {
  double tolerance = 1e-8;
  std::vector<TheoremEntry> entries;
  std::vector<TheoremEntry> violations;
  double max_violation = 0.0;  // max relative energy over m beyond the bound
  bool pass = true;
};

TheoremReport verify_theorem(const std::vector<int>& ns, double tolerance, DepthConfig config = {});

// ---------------------------------------------------------------------------
// Embedding comparison

struct EmbeddingConfig {
  DatasetConfig dataset;
  FilterbankSpec scattering{WaveletFamily::Morlet, 1, 8, 0.25, 1024, 1024};
  int max_order = 2;
  MfccConfig mfcc;
  std::size_t k = 50;
  int dim = 3;
  bool standardize = false;
  std::uint64_t shuffle_seed = 1;
  int jobs = 1;

  // 20×20 (α, r) grid with f1 cycling through 12..24; K = 50.
  static EmbeddingConfig desk_scale();
  // 50×50 grid, random f1, K = 100.
  static EmbeddingConfig full_scale(std::uint64_t seed);
};

struct FeatureSetReport {
  std::string name;
  std::vector<std::string> columns;
  Eigen::MatrixXd features;
  Embedding embedding;
  Eigen::MatrixXd rho;           // parameters (f1, α, r) × axes, signed Spearman
  Eigen::MatrixXd shuffled_rho;  // same, against permuted labels
  std::vector<AxisAssignment> assignment;
};

struct EmbeddingReport {
  EmbeddingConfig config;
  std::vector<ToneLabel> labels;
  FeatureSetReport scattering;
  FeatureSetReport mfcc;
};

// Signed Spearman correlation of each label parameter against each embedding axis,
// over the embedded rows.
Eigen::MatrixXd label_axis_correlation(const Embedding& embedding, const std::vector<ToneLabel>& labels);

// Fisher–Yates with the portable integer sampler.
std::vector<ToneLabel> shuffled_labels(const std::vector<ToneLabel>& labels, std::uint64_t seed);

Eigen::MatrixXd scattering_features(const std::vector<DatasetItem>& items, const Filterbank& fb, int max_order,
                                    int jobs, std::vector<std::string>* columns = nullptr);
Eigen::MatrixXd mfcc_features(const std::vector<DatasetItem>& items, const MfccConfig& config, int jobs);
// Per-column z-score; constant columns become 0.
Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x);

FeatureSetReport analyse_feature_set(std::string name, std::vector<std::string> columns, Eigen::MatrixXd features,
                                     const std::vector<ToneLabel>& labels, const EmbeddingConfig& config);

EmbeddingReport run_embedding_experiment(const EmbeddingConfig& config);

}  // namespace scatterlab
