#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scatterlab/cli.hpp"
#include "scatterlab/io.hpp"

using namespace scatterlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "scatterlab");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "scatterlab_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"no-such-command"}).code == kExitUsage);
    CHECK(run({"scatter"}).code == kExitUsage);  // --input is required
    CHECK(run({"--jobs", "0", "synth", "stack"}).code == kExitUsage);
    const auto dir = scratch("usage");
    const auto bad = run({"synth", "two-tone", "--nu1", "0.7", "--out", (dir / "x.csv").string()});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("nu1") != std::string::npos);
    CHECK(run({"scatter", "--input", (dir / "missing.csv").string()}).code == kExitUsage);
  }

  TEST_CASE("help exits with 0") {
    const auto r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("experiment") != std::string::npos);
  }

  TEST_CASE("verification failure exits with 3") {
    const auto dir = scratch("theorem");
    const auto ok = run({"experiment", "verify-theorem", "--n", "1,3", "--out-dir", dir.string()});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("PASS") != std::string::npos);
    CHECK(fs::exists(dir / "theorem.csv"));
    CHECK(fs::exists(dir / "manifest.json"));
    // Round-off residue beyond the bound is nonzero, so an absurd tolerance must fail.
    const auto strict = run({"experiment", "verify-theorem", "--n", "3", "--amplitude", "100", "--tolerance",
                             "1e-300", "--out-dir", dir.string()});
    CHECK(strict.code == kExitVerification);
    CHECK(strict.err.find("violation") != std::string::npos);
  }

  TEST_CASE("synth dataset writes 2500 signals with labels") {
    const auto dir = scratch("dataset");
    const auto path = dir / "dataset.f64";
    REQUIRE(run({"synth", "dataset", "--seed", "3", "--out", path.string()}).code == kExitOk);
    CHECK(fs::file_size(path) == 2500u * 1024u * 8u);
    const auto meta = read_json(fs::path(path.string() + ".json"));
    CHECK(meta["shape"][0] == 2500);
    CHECK(meta["labels"].size() == 2500);
    CHECK(meta["seed"] == 3);
    const auto set = read_signals(path);
    CHECK(set.names.front() == "s0000");
    CHECK(set.signals.size() == 2500);
  }

  TEST_CASE("seed precedence: flag over config file over environment") {
    const auto dir = scratch("seed");
    const auto path = (dir / "d.f64").string();
    auto seed_of = [&] { return read_json(path + ".json")["seed"].get<std::uint64_t>(); };
    const std::vector<std::string> base{"synth", "dataset", "--alpha-steps", "2", "--r-steps", "2", "--out", path};

    ::setenv("SCATTERLAB_SEED", "7", 1);
    REQUIRE(run(base).code == kExitOk);
    CHECK(seed_of() == 7);

    const auto config = dir / "run.toml";
    write_text(config, "[synth.dataset]\nseed = 11\n");
    auto with_config = base;
    with_config.insert(with_config.begin(), {"--config", config.string()});
    REQUIRE(run(with_config).code == kExitOk);
    CHECK(seed_of() == 11);

    auto with_flag = with_config;
    with_flag.insert(with_flag.end(), {"--seed", "13"});
    REQUIRE(run(with_flag).code == kExitOk);
    CHECK(seed_of() == 13);
    ::unsetenv("SCATTERLAB_SEED");

    REQUIRE(run(base).code == kExitOk);
    CHECK(seed_of() == 0);
  }

  TEST_CASE("scatter produces 37 coefficients for the default filterbank") {
    const auto dir = scratch("scatter");
    const auto sig = (dir / "tone.csv").string();
    REQUIRE(run({"synth", "additive", "--f1", "16", "--out", sig}).code == kExitOk);
    const auto feats = (dir / "features.csv").string();
    const auto r = run({"scatter", "--input", sig, "--out", feats, "--renormalize"});
    REQUIRE(r.code == kExitOk);
    const auto table = read_csv(feats);
    CHECK(table.header.size() == 38);
    CHECK(table.header[1] == "S0");
    CHECK(table.header[2] == "S1:0.25");
    REQUIRE(table.rows.size() == 1);
    const auto renorm = read_csv(dir / "features_renorm.csv");
    CHECK(renorm.rows.size() == 28);
    CHECK(read_json(feats + ".json")["max_order"] == 2);

    const auto dump = run({"scatter", "--input", sig, "--out", feats, "--dump-layers", (dir / "layers").string()});
    REQUIRE(dump.code == kExitOk);
    CHECK(fs::file_size(dir / "layers_additive_U1.f64") == 8u * 1024u * 8u);
    CHECK(fs::file_size(dir / "layers_additive_U2.f64") == 28u * 1024u * 8u);
  }

  TEST_CASE("filterbank and mfcc commands") {
    const auto dir = scratch("misc");
    const auto fb = run({"filterbank", "--family", "shannon", "--j", "3", "--len", "64",
                         "--dump", (dir / "fb.csv").string()});
    REQUIRE(fb.code == kExitOk);
    CHECK(fb.out.find("3 filters") != std::string::npos);
    CHECK(read_csv(dir / "fb.csv").rows.size() == 3 * 33);

    const auto sig = (dir / "tone.csv").string();
    REQUIRE(run({"synth", "two-tone", "--out", sig}).code == kExitOk);
    const auto mf = (dir / "mfcc.csv").string();
    REQUIRE(run({"mfcc", "--input", sig, "--out", mf}).code == kExitOk);
    CHECK(read_csv(mf).header.size() == 13);
  }

  TEST_CASE("outputs are byte-identical across worker counts") {
    const auto dir = scratch("jobs");
    const auto data = (dir / "d.f64").string();
    REQUIRE(run({"synth", "dataset", "--alpha-steps", "4", "--r-steps", "5", "--seed", "2", "--out", data}).code ==
            kExitOk);
    for (const std::string jobs : {"1", "3"}) {
      REQUIRE(run({"--jobs", jobs, "scatter", "--input", data, "--out", (dir / ("f" + jobs + ".csv")).string()})
                  .code == kExitOk);
      REQUIRE(run({"--jobs", jobs, "experiment", "depth-decay", "--n", "1,2,5", "--out-dir",
                   (dir / ("depth" + jobs)).string()})
                  .code == kExitOk);
    }
    CHECK(slurp(dir / "f1.csv") == slurp(dir / "f3.csv"));
    CHECK(slurp(dir / "depth1" / "depth_decay.csv") == slurp(dir / "depth3" / "depth_decay.csv"));
  }
}
