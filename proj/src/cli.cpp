#include "scatterlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "scatterlab/baselines.hpp"
#include "scatterlab/experiments.hpp"
#include "scatterlab/io.hpp"
#include "scatterlab/parallel.hpp"
#include "scatterlab/report.hpp"
#include "scatterlab/synthesis.hpp"

namespace fs = std::filesystem;

namespace scatterlab {
namespace {

struct FilterbankArgs {
  std::string family = "morlet";
  int q = 1;
  int j = 8;
  double lambda_max = 0.25;
  std::size_t t = 0;  // 0: whole signal
};

void add_filterbank_options(CLI::App* cmd, FilterbankArgs& fb) {
  cmd->add_option("--family", fb.family, "morlet, gammatone or shannon")->capture_default_str();
  cmd->add_option("--q", fb.q, "Filters per octave")->capture_default_str();
  cmd->add_option("--j", fb.j, "Number of octaves")->capture_default_str();
  cmd->add_option("--lambda-max", fb.lambda_max, "Highest centre frequency, cycles/sample")->capture_default_str();
  cmd->add_option("--t", fb.t, "Averaging scale in samples (0: signal length)")->capture_default_str();
}

FilterbankSpec make_spec(const FilterbankArgs& a, std::size_t signal_len) {
  FilterbankSpec spec;
  spec.family = parse_wavelet_family(a.family);
  spec.q = a.q;
  spec.j = a.j;
  spec.lambda_max = a.lambda_max;
  spec.signal_len = signal_len;
  spec.t = a.t == 0 ? signal_len : a.t;
  return spec;
}

Activation parse_activation(const std::string& name) {
  if (name == "squared") return Activation::SquaredModulus;
  if (name == "modulus") return Activation::Modulus;
  throw std::invalid_argument(fmt::format("unknown activation '{}' (expected squared or modulus)", name));
}

FundamentalMode parse_mode(const std::string& name) {
  if (name == "random") return FundamentalMode::Random;
  if (name == "cycle") return FundamentalMode::Cycle;
  throw std::invalid_argument(fmt::format("unknown f1 mode '{}' (expected random or cycle)", name));
}

void write_signal_file(const fs::path& path, const SignalSet& set, nlohmann::json meta) {
  meta["versions"] = version_info();
  if (path.extension() == ".csv") {
    write_signals_csv(path, set);
    meta["names"] = set.names;
    meta["shape"] = {set.signals.size(), set.signals.empty() ? 0 : set.signals.front().size()};
    write_json(fs::path(path.string() + ".json"), meta);
  } else {
    write_signals_binary(path, set, meta);
  }
}

std::string signal_name(std::size_t i, std::size_t count) {
  const auto width = std::to_string(count > 0 ? count - 1 : 0).size();
  return fmt::format("s{:0{}}", i, width);
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wavelet scattering toolkit: synthesis, features and experiments"};
  app.set_config("--config", "", "TOML/INI configuration file (flags override file values)");
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  // synth ------------------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Generate test signals")->require_subcommand(1);

  AdditiveToneSpec additive;
  bool strict = false;
  std::string additive_out = "additive.csv";
  auto* synth_additive = synth->add_subcommand("additive", "Hann-windowed harmonic tone");
  synth_additive->add_option("--alpha", additive.alpha, "Spectral decay exponent")->capture_default_str();
  synth_additive->add_option("--r", additive.r, "Odd/even amplitude difference")->capture_default_str();
  synth_additive->add_option("--f1", additive.f1, "Fundamental, cycles per window")->capture_default_str();
  synth_additive->add_option("--n", additive.n, "Harmonic count")->capture_default_str();
  synth_additive->add_option("--t", additive.t, "Window length in samples")->capture_default_str();
  synth_additive->add_flag("--strict", strict, "Reject harmonics at or above Nyquist instead of dropping them");
  synth_additive->add_option("--out", additive_out, "Output file (.csv or raw float64)")->capture_default_str();

  HarmonicStackSpec stack;
  std::string stack_out = "stack.csv";
  auto* synth_stack = synth->add_subcommand("stack", "Equal-amplitude harmonic stack on exact bins");
  synth_stack->add_option("--n", stack.n, "Number of harmonics")->capture_default_str();
  synth_stack->add_option("--a1", stack.a1, "Amplitude")->capture_default_str();
  synth_stack->add_option("--phi1", stack.phi1, "Phase")->capture_default_str();
  synth_stack->add_option("--f1", stack.f1, "Fundamental, cycles per frame")->capture_default_str();
  synth_stack->add_option("--len", stack.signal_len, "Frame length")->capture_default_str();
  synth_stack->add_option("--out", stack_out, "Output file")->capture_default_str();

  TwoToneSpec tone;
  std::string tone_out = "two_tone.csv";
  auto* synth_tone = synth->add_subcommand("two-tone", "Sum of two cosines");
  synth_tone->add_option("--a1", tone.a1)->capture_default_str();
  synth_tone->add_option("--a2", tone.a2)->capture_default_str();
  synth_tone->add_option("--nu1", tone.nu1, "Cycles/sample")->capture_default_str();
  synth_tone->add_option("--nu2", tone.nu2, "Cycles/sample")->capture_default_str();
  synth_tone->add_option("--phi1", tone.phi1)->capture_default_str();
  synth_tone->add_option("--phi2", tone.phi2)->capture_default_str();
  synth_tone->add_option("--len", tone.signal_len)->capture_default_str();
  synth_tone->add_option("--out", tone_out, "Output file")->capture_default_str();

  DatasetConfig dataset;
  std::string dataset_mode = "random";
  std::string dataset_out = "dataset.f64";
  auto* synth_dataset = synth->add_subcommand("dataset", "Grid of additive tones over (alpha, r)");
  synth_dataset->add_option("--seed", dataset.seed, "Random seed")->envname("SCATTERLAB_SEED")->capture_default_str();
  synth_dataset->add_option("--alpha-steps", dataset.alpha_steps)->capture_default_str();
  synth_dataset->add_option("--r-steps", dataset.r_steps)->capture_default_str();
  synth_dataset->add_option("--f1-mode", dataset_mode, "random or cycle")->capture_default_str();
  synth_dataset->add_option("--out", dataset_out, "Output file (.csv or raw float64)")->capture_default_str();

  // scatter ----------------------------------------------------------------
  FilterbankArgs scatter_fb;
  std::string scatter_in;
  std::string scatter_out = "features.csv";
  int scatter_order = 2;
  std::string activation = "squared";
  bool renormalize = false;
  std::string renorm_out;
  double renorm_eps = 1e-12;
  std::string dump_prefix;
  auto* scatter_cmd = app.add_subcommand("scatter", "Scattering features of signal files");
  scatter_cmd->add_option("--input", scatter_in, "Signal file")->required();
  add_filterbank_options(scatter_cmd, scatter_fb);
  scatter_cmd->add_option("--order", scatter_order, "Maximum scattering order")->capture_default_str();
  scatter_cmd->add_option("--activation", activation, "squared or modulus")->capture_default_str();
  scatter_cmd->add_option("--out", scatter_out, "Feature CSV")->capture_default_str();
  scatter_cmd->add_flag("--renormalize", renormalize, "Also write the renormalized second-order table");
  scatter_cmd->add_option("--renorm-out", renorm_out, "Renormalized table path (default <out>_renorm.csv)");
  scatter_cmd->add_option("--eps", renorm_eps, "Relative regularizer for renormalization")->capture_default_str();
  scatter_cmd->add_option("--dump-layers", dump_prefix, "Prefix for raw float64 layer dumps");

  // mfcc -------------------------------------------------------------------
  MfccConfig mfcc_cfg;
  std::string mfcc_in;
  std::string mfcc_out = "mfcc.csv";
  auto* mfcc_cmd = app.add_subcommand("mfcc", "MFCC baseline features");
  mfcc_cmd->add_option("--input", mfcc_in, "Signal file")->required();
  mfcc_cmd->add_option("--n-mels", mfcc_cfg.n_mels)->capture_default_str();
  mfcc_cmd->add_option("--n-mfcc", mfcc_cfg.n_mfcc)->capture_default_str();
  mfcc_cmd->add_option("--fmin", mfcc_cfg.fmin, "Cycles/sample")->capture_default_str();
  mfcc_cmd->add_option("--fmax", mfcc_cfg.fmax, "Cycles/sample")->capture_default_str();
  mfcc_cmd->add_option("--out", mfcc_out)->capture_default_str();

  // filterbank -------------------------------------------------------------
  FilterbankArgs inspect_fb;
  std::size_t inspect_len = 1024;
  std::string dump_path;
  auto* fb_cmd = app.add_subcommand("filterbank", "Inspect a filterbank");
  add_filterbank_options(fb_cmd, inspect_fb);
  fb_cmd->add_option("--len", inspect_len, "Signal length")->capture_default_str();
  fb_cmd->add_option("--dump", dump_path, "Write |psi| per filter as CSV (filter, lambda, bin, nu, magnitude)");

  // experiment -------------------------------------------------------------
  auto* experiment = app.add_subcommand("experiment", "Run an experiment driver")->require_subcommand(1);

  MaskingConfig masking;
  std::string masking_family = "gammatone";
  std::string masking_dir = "results/masking";
  auto* exp_masking = experiment->add_subcommand("masking-grid", "Second-order masking over amplitude and detuning");
  exp_masking->add_option("--family", masking_family)->capture_default_str();
  exp_masking->add_option("--q", masking.q)->capture_default_str();
  exp_masking->add_option("--j", masking.j)->capture_default_str();
  exp_masking->add_option("--nu1", masking.nu1)->capture_default_str();
  exp_masking->add_option("--len", masking.signal_len)->capture_default_str();
  exp_masking->add_option("--t", masking.t)->capture_default_str();
  exp_masking->add_option("--amp-steps", masking.amp_steps)->capture_default_str();
  exp_masking->add_option("--freq-steps", masking.freq_steps)->capture_default_str();
  exp_masking->add_option("--amp-min", masking.amp_min)->capture_default_str();
  exp_masking->add_option("--rel-min", masking.rel_min)->capture_default_str();
  exp_masking->add_option("--rel-max", masking.rel_max)->capture_default_str();
  exp_masking->add_option("--out-dir", masking_dir)->capture_default_str();

  DepthConfig depth;
  std::string depth_dir = "results/depth";
  auto* exp_depth = experiment->add_subcommand("depth-decay", "Layer energy versus depth for harmonic stacks");
  exp_depth->add_option("--n", depth.ns, "Harmonic counts, comma separated")->delimiter(',');
  exp_depth->add_option("--f1", depth.f1)->capture_default_str();
  exp_depth->add_option("--len", depth.signal_len)->capture_default_str();
  exp_depth->add_option("--j", depth.j)->capture_default_str();
  exp_depth->add_option("--max-depth", depth.max_depth)->capture_default_str();
  exp_depth->add_option("--amplitude", depth.amplitude)->capture_default_str();
  exp_depth->add_option("--threshold", depth.threshold)->capture_default_str();
  exp_depth->add_option("--out-dir", depth_dir)->capture_default_str();

  std::vector<int> theorem_ns{1, 2, 3, 4, 8, 16};
  double tolerance = 1e-8;
  DepthConfig theorem_depth;
  std::string theorem_dir = "results/theorem";
  auto* exp_theorem = experiment->add_subcommand("verify-theorem", "Check the bandwidth bound on scattering depth");
  exp_theorem->add_option("--n", theorem_ns, "Harmonic counts, comma separated")->delimiter(',');
  exp_theorem->add_option("--tolerance", tolerance)->capture_default_str();
  exp_theorem->add_option("--amplitude", theorem_depth.amplitude)->capture_default_str();
  exp_theorem->add_option("--out-dir", theorem_dir)->capture_default_str();

  bool desk_scale = false;
  std::uint64_t embed_seed = 0;
  std::size_t embed_k = 0;
  bool standardize = false;
  std::string embed_dir = "results/embed";
  auto* exp_embed = experiment->add_subcommand("embed", "Isomap of scattering and MFCC features");
  exp_embed->add_flag("--desk-scale", desk_scale, "20x20 grid with cycling f1 and K=50");
  exp_embed->add_option("--seed", embed_seed, "Dataset seed")->envname("SCATTERLAB_SEED")->capture_default_str();
  exp_embed->add_option("--k", embed_k, "Neighbours (0: scale default)")->capture_default_str();
  exp_embed->add_flag("--standardize", standardize, "Z-score feature columns before Isomap");
  exp_embed->add_option("--out-dir", embed_dir)->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    const std::string effective_config = app.config_to_str(true, false);

    if (synth_additive->parsed()) {
      additive.drop_above_nyquist = !strict;
      const auto signal = additive_tone(additive);
      write_signal_file(additive_out, {{"additive"}, {signal}},
                        {{"kind", "additive"},
                         {"alpha", additive.alpha},
                         {"r", additive.r},
                         {"f1", additive.f1},
                         {"n", additive.n},
                         {"t", additive.t},
                         {"drop_above_nyquist", additive.drop_above_nyquist}});
      out << fmt::format("wrote {} ({} samples)\n", additive_out, signal.size());
    } else if (synth_stack->parsed()) {
      const auto signal = harmonic_stack(stack);
      write_signal_file(stack_out, {{"stack"}, {signal}},
                        {{"kind", "stack"},
                         {"n", stack.n},
                         {"a1", stack.a1},
                         {"phi1", stack.phi1},
                         {"f1", stack.f1},
                         {"signal_len", stack.signal_len}});
      out << fmt::format("wrote {} ({} samples)\n", stack_out, signal.size());
    } else if (synth_tone->parsed()) {
      const auto signal = two_tone(tone);
      write_signal_file(tone_out, {{"two_tone"}, {signal}},
                        {{"kind", "two-tone"},
                         {"a1", tone.a1},
                         {"a2", tone.a2},
                         {"nu1", tone.nu1},
                         {"nu2", tone.nu2},
                         {"phi1", tone.phi1},
                         {"phi2", tone.phi2},
                         {"signal_len", tone.signal_len}});
      out << fmt::format("wrote {} ({} samples)\n", tone_out, signal.size());
    } else if (synth_dataset->parsed()) {
      dataset.f1_mode = parse_mode(dataset_mode);
      const auto items = dataset_generate(dataset, jobs);
      SignalSet set;
      nlohmann::json labels = nlohmann::json::array();
      for (std::size_t i = 0; i < items.size(); ++i) {
        set.names.push_back(signal_name(i, items.size()));
        set.signals.push_back(items[i].signal);
        labels.push_back({{"f1", items[i].spec.f1}, {"alpha", items[i].spec.alpha}, {"r", items[i].spec.r}});
      }
      write_signal_file(dataset_out, set, {{"kind", "dataset"}, {"config", to_json(dataset)}, {"seed", dataset.seed},
                                           {"labels", labels}});
      out << fmt::format("wrote {} ({} signals)\n", dataset_out, items.size());
    } else if (scatter_cmd->parsed()) {
      Timer timer;
      const auto input = read_signals(scatter_in);
      if (input.signals.empty()) throw std::invalid_argument("input holds no signals");
      const std::size_t len = input.signals.front().size();
      const Filterbank fb = build_filterbank(make_spec(scatter_fb, len));
      ScatterOptions options;
      options.max_order = scatter_order;
      options.activation = parse_activation(activation);
      if (scatter_order < 1) throw std::invalid_argument("--order must be >= 1");

      std::vector<ScatterResult> results(input.signals.size());
      parallel_for(results.size(), jobs, [&](std::size_t i) {
        if (input.signals[i].size() != len) throw std::invalid_argument("all input signals must share one length");
        results[i] = scatter(input.signals[i], fb, options);
        if (dump_prefix.empty()) results[i].layers.clear();
      });

      std::vector<std::string> header{"signal"};
      const auto names = feature_header(results.front().feature, fb);
      header.insert(header.end(), names.begin(), names.end());
      CsvTable features(header);
      for (std::size_t i = 0; i < results.size(); ++i) features.add_row({input.names[i]}, results[i].feature.flatten());
      features.write(scatter_out);
      std::vector<std::string> files{scatter_out};

      if (renormalize) {
        if (scatter_order < 2) throw std::invalid_argument("--renormalize needs --order >= 2");
        const fs::path out_path(scatter_out);
        const fs::path path = renorm_out.empty()
                                  ? out_path.parent_path() / (out_path.stem().string() + "_renorm.csv")
                                  : fs::path(renorm_out);
        CsvTable table({"signal", "lambda1", "lambda2", "value"});
        for (std::size_t i = 0; i < results.size(); ++i) {
          for (const auto& c : renormalize_second_order(results[i].feature, renorm_eps)) {
            table.add_row({input.names[i]}, {fb.lambda(c.lambda1), fb.lambda(c.lambda2), c.value});
          }
        }
        table.write(path);
        files.push_back(path.string());
      }
      if (!dump_prefix.empty()) {
        for (std::size_t i = 0; i < results.size(); ++i) {
          for (const auto& layer : results[i].layers) {
            const auto prefix = fmt::format("{}_{}_U{}", dump_prefix, input.names[i], layer.depth());
            write_layer_dump(prefix, layer, fb);
            files.push_back(prefix + ".f64");
          }
        }
      }
      nlohmann::json manifest{{"command", "scatter"},
                              {"input", scatter_in},
                              {"filterbank", to_json(fb.spec())},
                              {"max_order", scatter_order},
                              {"activation", activation},
                              {"renormalize", renormalize},
                              {"eps", renorm_eps},
                              {"config_file", effective_config},
                              {"versions", version_info()},
                              {"wall_seconds", timer.seconds()},
                              {"files", files}};
      write_json(scatter_out + ".json", manifest);
      out << fmt::format("wrote {} ({} signals, {} coefficients)\n", scatter_out, results.size(),
                         results.front().feature.dimension());
    } else if (mfcc_cmd->parsed()) {
      validate(mfcc_cfg);
      const auto input = read_signals(mfcc_in);
      std::vector<std::vector<double>> rows(input.signals.size());
      parallel_for(rows.size(), jobs, [&](std::size_t i) { rows[i] = mfcc(input.signals[i], mfcc_cfg); });
      std::vector<std::string> header{"signal"};
      for (int k = 0; k < mfcc_cfg.n_mfcc; ++k) header.push_back(fmt::format("mfcc{}", k));
      CsvTable table(header);
      for (std::size_t i = 0; i < rows.size(); ++i) table.add_row({input.names[i]}, rows[i]);
      table.write(mfcc_out);
      write_json(mfcc_out + ".json", {{"command", "mfcc"},
                                      {"input", mfcc_in},
                                      {"mfcc", to_json(mfcc_cfg)},
                                      {"config_file", effective_config},
                                      {"versions", version_info()}});
      out << fmt::format("wrote {} ({} signals)\n", mfcc_out, rows.size());
    } else if (fb_cmd->parsed()) {
      const Filterbank fb = build_filterbank(make_spec(inspect_fb, inspect_len));
      if (!dump_path.empty()) {
        CsvTable table({"filter", "lambda", "bin", "nu", "magnitude"});
        for (std::size_t j = 0; j < fb.size(); ++j) {
          const auto filter = fb.filter(j);
          for (std::size_t k = 0; k <= fb.signal_len() / 2; ++k) {
            table.add_row({std::to_string(j)}, {fb.lambda(j), static_cast<double>(k),
                                                bin_frequency(k, fb.signal_len()), std::abs(filter[k])});
          }
        }
        table.write(dump_path);
        out << fmt::format("wrote {}\n", dump_path);
      }
      out << fmt::format("{} filters, {} Q={} J={}\n", fb.size(), to_string(fb.spec().family), fb.spec().q,
                         fb.spec().j);
      for (std::size_t j = 0; j < fb.size(); ++j) out << fmt::format("{} {}\n", j, format_number(fb.lambda(j)));
    } else if (exp_masking->parsed()) {
      Timer timer;
      masking.family = parse_wavelet_family(masking_family);
      masking.jobs = jobs;
      const auto result = run_masking_grid(masking);
      fs::create_directories(masking_dir);
      auto files = write_masking_outputs(masking_dir, result);
      auto config = to_json(masking);
      config["config_file"] = effective_config;
      write_manifest(masking_dir, "experiment masking-grid", config, timer.seconds(), files);
      out << fmt::format("masking grid {}x{} written to {}\n", masking.amp_steps, masking.freq_steps, masking_dir);
    } else if (exp_depth->parsed()) {
      Timer timer;
      depth.jobs = jobs;
      const auto result = run_depth_decay(depth);
      fs::create_directories(depth_dir);
      auto files = write_depth_outputs(depth_dir, result);
      auto config = to_json(depth);
      config["config_file"] = effective_config;
      write_manifest(depth_dir, "experiment depth-decay", config, timer.seconds(), files);
      for (const auto& c : result.curves) {
        out << fmt::format("N={:4d} effective depth {}\n", c.n, c.effective_depth);
      }
    } else if (exp_theorem->parsed()) {
      Timer timer;
      theorem_depth.jobs = jobs;
      const auto report = verify_theorem(theorem_ns, tolerance, theorem_depth);
      fs::create_directories(theorem_dir);
      auto files = write_theorem_outputs(theorem_dir, report);
      auto config = to_json(theorem_depth);
      config["ns"] = theorem_ns;
      config["tolerance"] = tolerance;
      config["config_file"] = effective_config;
      write_manifest(theorem_dir, "experiment verify-theorem", config, timer.seconds(), files);
      out << fmt::format("max relative energy beyond the bound: {}\n", format_number(report.max_violation));
      if (!report.pass) {
        for (const auto& v : report.violations) {
          err << fmt::format("violation: N={} m={} relative={}\n", v.n, v.m, format_number(v.relative));
        }
        throw VerificationFailure("bandwidth bound on scattering depth violated");
      }
      out << "PASS\n";
    } else if (exp_embed->parsed()) {
      Timer timer;
      EmbeddingConfig config = desk_scale ? EmbeddingConfig::desk_scale() : EmbeddingConfig::full_scale(embed_seed);
      config.dataset.seed = embed_seed;
      if (embed_k > 0) config.k = embed_k;
      config.standardize = standardize;
      config.jobs = jobs;
      const auto report = run_embedding_experiment(config);
      fs::create_directories(embed_dir);
      auto files = write_embedding_outputs(embed_dir, report);
      auto manifest = to_json(config);
      manifest["seed"] = embed_seed;
      manifest["desk_scale"] = desk_scale;
      manifest["config_file"] = effective_config;
      write_manifest(embed_dir, "experiment embed", manifest, timer.seconds(), files);
      const char* params[] = {"f1", "alpha", "r"};
      for (const FeatureSetReport* set : {&report.scattering, &report.mfcc}) {
        for (const auto& a : set->assignment) {
          out << fmt::format("{:10s} {:5s} axis {} |rho| = {:.3f}\n", set->name, params[a.parameter], a.axis,
                             a.abs_rho);
        }
      }
    }
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace scatterlab
