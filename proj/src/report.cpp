#include "scatterlab/report.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "scatterlab/io.hpp"
#include "scatterlab/svg.hpp"

namespace scatterlab {
namespace {

std::string str(double v) { return format_number(v); }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }

const char* kParameters[] = {"f1", "alpha", "r"};

}  // namespace

nlohmann::json to_json(const FilterbankSpec& spec) {
  return {{"family", std::string(to_string(spec.family))},
          {"q", spec.q},
          {"j", spec.j},
          {"lambda_max", spec.lambda_max},
          {"t", spec.t},
          {"signal_len", spec.signal_len}};
}

nlohmann::json to_json(const MaskingConfig& c) {
  return {{"family", std::string(to_string(c.family))},
          {"q", c.q},
          {"j", c.j},
          {"nu1", c.nu1},
          {"signal_len", c.signal_len},
          {"t", c.t},
          {"amp_steps", c.amp_steps},
          {"freq_steps", c.freq_steps},
          {"amp_min", c.amp_min},
          {"amp_max", c.amp_max},
          {"rel_min", c.rel_min},
          {"rel_max", c.rel_max},
          {"phi1", c.phi1},
          {"phi2", c.phi2},
          {"snap_to_bins", c.snap_to_bins},
          {"eps", c.eps},
          {"grid_note", "amplitude ratio and relative detuning axes are log-spaced; ranges straddle the masking boundary"}};
}

nlohmann::json to_json(const DepthConfig& c) {
  return {{"ns", c.ns},
          {"f1", c.f1},
          {"signal_len", c.signal_len},
          {"j", c.j},
          {"max_depth", c.max_depth},
          {"amplitude", c.amplitude},
          {"threshold", c.threshold},
          {"band_offset", c.band_offset}};
}

nlohmann::json to_json(const DatasetConfig& c) {
  return {{"alpha_steps", c.alpha_steps},
          {"r_steps", c.r_steps},
          {"alpha_min", c.alpha_min},
          {"alpha_max", c.alpha_max},
          {"r_min", c.r_min},
          {"r_max", c.r_max},
          {"f1_min", c.f1_min},
          {"f1_max", c.f1_max},
          {"n", c.n},
          {"t", c.t},
          {"f1_mode", c.f1_mode == FundamentalMode::Random ? "random" : "cycle"},
          {"seed", c.seed},
          {"generator", "mt19937_64"}};
}

nlohmann::json to_json(const MfccConfig& c) {
  return {{"n_mels", c.n_mels},
          {"n_mfcc", c.n_mfcc},
          {"fmin", c.fmin},
          {"fmax", c.fmax},
          {"sample_rate", c.sample_rate},
          {"log_floor", c.log_floor}};
}

nlohmann::json to_json(const EmbeddingConfig& c) {
  return {{"dataset", to_json(c.dataset)},
          {"scattering", to_json(c.scattering)},
          {"max_order", c.max_order},
          {"mfcc", to_json(c.mfcc)},
          {"k", c.k},
          {"dim", c.dim},
          {"standardize", c.standardize},
          {"shuffle_seed", c.shuffle_seed}};
}

nlohmann::json version_info() {
  return {{"scatterlab", kVersion},
          {"fft", fft_backend_version()},
          {"eigen", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
          {"fmt", FMT_VERSION},
          {"compiler", __VERSION__}};
}

void write_manifest(const std::filesystem::path& dir, const std::string& command, const nlohmann::json& config,
                    double seconds, const std::vector<std::string>& files) {
  nlohmann::json m;
  m["command"] = command;
  m["config"] = config;
  if (config.contains("seed")) m["seed"] = config["seed"];
  m["versions"] = version_info();
  m["wall_seconds"] = seconds;
  m["files"] = files;
  write_json(dir / "manifest.json", m);
}

std::vector<std::size_t> masking_panel_indices(const MaskingGridResult& result) {
  std::vector<std::size_t> out;
  const auto q = static_cast<std::size_t>(result.config.q);
  const std::size_t count = result.lambdas.size();
  for (std::size_t start = result.lambda1 + 1; start < count; start += q) {
    std::size_t best = start;
    double best_value = -1.0;
    for (std::size_t l = start; l < std::min(count, start + q); ++l) {
      double peak = 0.0;
      for (const auto& plane : result.values) {
        for (const auto& profile : plane) {
          if (std::isfinite(profile[l])) peak = std::max(peak, profile[l]);
        }
      }
      if (peak > best_value) {
        best_value = peak;
        best = l;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::vector<std::string> write_masking_outputs(const std::filesystem::path& dir, const MaskingGridResult& r) {
  CsvTable table({"amp_ratio", "rel_freq", "nu2", "lambda2_index", "lambda2", "value"});
  for (std::size_t a = 0; a < r.amp_ratios.size(); ++a) {
    for (std::size_t f = 0; f < r.rel_freqs.size(); ++f) {
      if (!r.valid[f]) continue;
      for (std::size_t l = r.lambda1 + 1; l < r.lambdas.size(); ++l) {
        table.add_row({str(r.amp_ratios[a]), str(r.rel_freqs[f]), str(r.nu2[f]), str(l), str(r.lambdas[l]),
                       str(r.values[a][f][l])});
      }
    }
  }
  table.write(dir / "masking.csv");

  svg::HeatmapGrid grid;
  grid.title = fmt::format("Masking coefficient, {} Q={}, nu1={}", to_string(r.config.family), r.config.q,
                           format_number(r.nu1));
  grid.x_label = "|nu2 - nu1| / nu1";
  grid.y_label = "a2 / a1";
  grid.vmax = r.max_value > 0.0 ? r.max_value : 1.0;
  for (const std::size_t l : masking_panel_indices(r)) {
    svg::HeatmapPanel panel;
    panel.title = fmt::format("lambda2 = {:.4g}", r.lambdas[l]);
    panel.x = r.rel_freqs;
    panel.y = r.amp_ratios;
    panel.values.assign(r.amp_ratios.size(), std::vector<double>(r.rel_freqs.size()));
    for (std::size_t a = 0; a < r.amp_ratios.size(); ++a) {
      for (std::size_t f = 0; f < r.rel_freqs.size(); ++f) panel.values[a][f] = r.values[a][f][l];
    }
    grid.panels.push_back(std::move(panel));
  }
  write_text(dir / "masking.svg", svg::render(grid));
  return {"masking.csv", "masking.svg"};
}

std::vector<std::string> write_depth_outputs(const std::filesystem::path& dir, const DepthDecayResult& r) {
  CsvTable decay({"n", "m", "energy", "relative"});
  CsvTable depth({"n", "octaves", "effective_depth"});
  svg::LinePlot plot;
  plot.title = "Layer energy relative to the scalogram";
  plot.x_label = "depth m";
  plot.y_label = "energy(U_m) / energy(U_1)";
  plot.log_y = true;
  for (const auto& c : r.curves) {
    svg::Series series;
    series.label = fmt::format("N = {}", c.n);
    for (std::size_t i = 0; i < c.energy.size(); ++i) {
      decay.add_row({str(c.n), str(i + 1)}, {c.energy[i], c.relative[i]});
      if (c.relative[i] > 0.0) {
        series.x.push_back(static_cast<double>(i + 1));
        series.y.push_back(c.relative[i]);
      }
    }
    depth.add_row({str(c.n), str(octave_bandwidth(c.n)), str(c.effective_depth)});
    plot.series.push_back(std::move(series));
  }
  decay.write(dir / "depth_decay.csv");
  depth.write(dir / "effective_depth.csv");
  write_text(dir / "depth_decay.svg", svg::render(plot));
  return {"depth_decay.csv", "effective_depth.csv", "depth_decay.svg"};
}

std::vector<std::string> write_theorem_outputs(const std::filesystem::path& dir, const TheoremReport& report) {
  CsvTable table({"n", "m", "bound", "relative", "checked", "violation"});
  for (const auto& e : report.entries) {
    table.add_row({str(e.n), str(e.m), str(e.bound), str(e.relative), e.m > e.bound ? "1" : "0",
                   e.violation ? "1" : "0"});
  }
  table.write(dir / "theorem.csv");
  return {"theorem.csv"};
}

std::vector<std::string> write_embedding_outputs(const std::filesystem::path& dir, const EmbeddingReport& report) {
  std::vector<std::string> files;
  CsvTable corr({"features", "parameter", "axis", "rho", "abs_rho", "shuffled_rho", "assigned"});
  svg::ScatterGrid grid;
  grid.title = "Isomap embeddings: projections coloured by f1, alpha, r";

  for (const FeatureSetReport* set : {&report.scattering, &report.mfcc}) {
    const auto& e = set->embedding;
    const auto n = report.labels.size();
    std::vector<Eigen::Index> position(n, -1);
    for (std::size_t i = 0; i < e.rows.size(); ++i) position[e.rows[i]] = static_cast<Eigen::Index>(i);

    CsvTable coords({"row_id", "x", "y", "z", "f1", "alpha", "r", "component_flag"});
    for (std::size_t row = 0; row < n; ++row) {
      const auto& l = report.labels[row];
      std::vector<std::string> fields{str(row)};
      for (Eigen::Index a = 0; a < 3; ++a) {
        const bool present = position[row] >= 0 && a < e.coords.cols();
        fields.push_back(present ? str(e.coords(position[row], a)) : "");
      }
      fields.push_back(str(l.f1));
      fields.push_back(str(l.alpha));
      fields.push_back(str(l.r));
      fields.push_back(e.in_component[row] ? "1" : "0");
      coords.add_row(fields);
    }
    const std::string coords_name = fmt::format("embedding_{}.csv", set->name);
    coords.write(dir / coords_name);

    CsvTable eig({"index", "eigenvalue"});
    for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) eig.add_row({str(static_cast<std::size_t>(i))}, {e.eigenvalues(i)});
    const std::string eig_name = fmt::format("eigenvalues_{}.csv", set->name);
    eig.write(dir / eig_name);

    CsvTable feats([&] {
      std::vector<std::string> h{"row_id"};
      h.insert(h.end(), set->columns.begin(), set->columns.end());
      return h;
    }());
    for (Eigen::Index i = 0; i < set->features.rows(); ++i) {
      std::vector<double> v(set->features.cols());
      for (Eigen::Index c = 0; c < set->features.cols(); ++c) v[static_cast<std::size_t>(c)] = set->features(i, c);
      feats.add_row({str(static_cast<std::size_t>(i))}, v);
    }
    const std::string feat_name = fmt::format("features_{}.csv", set->name);
    feats.write(dir / feat_name);
    files.insert(files.end(), {coords_name, eig_name, feat_name});

    for (Eigen::Index p = 0; p < set->rho.rows(); ++p) {
      for (Eigen::Index a = 0; a < set->rho.cols(); ++a) {
        const bool assigned = set->assignment[static_cast<std::size_t>(p)].axis == static_cast<std::size_t>(a);
        corr.add_row({set->name, kParameters[p], str(static_cast<std::size_t>(a)), str(set->rho(p, a)),
                      str(std::abs(set->rho(p, a))), str(set->shuffled_rho(p, a)), assigned ? "1" : "0"});
      }
    }

    const std::pair<Eigen::Index, Eigen::Index> projections[] = {{0, 1}, {0, 2}, {1, 2}};
    const char* axis_names = "xyz";
    for (std::size_t p = 0; p < 3; ++p) {
      for (const auto& [ax, ay] : projections) {
        if (ay >= e.coords.cols()) continue;
        svg::ScatterPanel panel;
        panel.title = fmt::format("{}: {}{} by {}", set->name, axis_names[ax], axis_names[ay], kParameters[p]);
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
          const auto& l = report.labels[e.rows[i]];
          panel.x.push_back(e.coords(static_cast<Eigen::Index>(i), ax));
          panel.y.push_back(e.coords(static_cast<Eigen::Index>(i), ay));
          panel.color.push_back(p == 0 ? l.f1 : p == 1 ? l.alpha : l.r);
        }
        grid.panels.push_back(std::move(panel));
      }
    }
  }
  corr.write(dir / "correlations.csv");
  write_text(dir / "embedding.svg", svg::render(grid));
  files.insert(files.end(), {"correlations.csv", "embedding.svg"});
  return files;
}

}  // namespace scatterlab
