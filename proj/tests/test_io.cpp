#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "scatterlab/io.hpp"
#include "scatterlab/svg.hpp"

using namespace scatterlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "scatterlab_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("number formatting round-trips") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
      const double v = u(rng) * std::pow(10.0, i % 40 - 20);
      CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  }

  TEST_CASE("CSV quoting and CRLF records") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CsvTable t({"name", "value"});
    t.add_row({"x,y"}, {1.5});
    t.add_row({"line\nbreak", "2"});
    CHECK(t.text() == "name,value\r\n\"x,y\",1.5\r\n\"line\nbreak\",2\r\n");
    CHECK_THROWS_AS(t.add_row({"only one"}), std::logic_error);

    const auto path = scratch("quoted.csv");
    t.write(path);
    const auto data = read_csv(path);
    CHECK(data.header == std::vector<std::string>{"name", "value"});
    REQUIRE(data.rows.size() == 2);
    CHECK(data.rows[0][0] == "x,y");
    CHECK(data.rows[1][0] == "line\nbreak");
  }

  TEST_CASE("CSV reader rejects malformed input") {
    const auto path = scratch("bad.csv");
    write_text(path, "a,b\r\n1\r\n");
    CHECK_THROWS_AS(read_csv(path), std::invalid_argument);
    write_text(path, "a,\"b\r\n");
    CHECK_THROWS_AS(read_csv(path), std::invalid_argument);
    CHECK_THROWS_AS(read_csv(scratch("missing.csv")), std::invalid_argument);
  }

  TEST_CASE("signal sets round-trip through CSV and float64") {
    SignalSet set{{"a", "b"}, {{0.1, -2.0, 1e-300}, {3.0, 4.5, -0.0}}};
    const auto csv = scratch("signals.csv");
    write_signals_csv(csv, set);
    const auto back = read_signals(csv);
    CHECK(back.names == set.names);
    CHECK(back.signals == set.signals);

    const auto bin = scratch("signals.f64");
    write_signals_binary(bin, set, {{"seed", 3}});
    CHECK(fs::file_size(bin) == 48);
    const auto raw = slurp(bin);
    CHECK(static_cast<unsigned char>(raw[7]) == 0x3f);  // little-endian: sign/exponent byte of 0.1 last
    const auto meta = read_json(fs::path(bin.string() + ".json"));
    CHECK(meta["seed"] == 3);
    CHECK(meta["dtype"] == "<f8");
    const auto back2 = read_signals(bin);
    CHECK(back2.signals == set.signals);
    CHECK(back2.names == set.names);
  }

  TEST_CASE("layer dump") {
    const auto fb = build_filterbank({WaveletFamily::Morlet, 2, 2, 0.25, 16, 16});
    ScatteringLayer layer(2, {{0, 1}, {0, 2}}, 16);
    layer.row(1)[3] = 2.5;
    const auto prefix = scratch("dump_U2");
    write_layer_dump(prefix, layer, fb);
    const auto values = read_f64_le(fs::path(prefix.string() + ".f64"));
    REQUIRE(values.size() == 32);
    CHECK(values[16 + 3] == 2.5);
    const auto meta = read_json(fs::path(prefix.string() + ".json"));
    CHECK(meta["depth"] == 2);
    CHECK(meta["shape"] == nlohmann::json::array({2, 16}));
    CHECK(meta["paths"][1]["label"] == "S2:0.25:0.125");
    ScatteringLayer foreign(2, {{0, 4}}, 16);
    CHECK_THROWS_AS(write_layer_dump(prefix, foreign, fb), std::invalid_argument);
  }

  TEST_CASE("JSON parse errors are usage errors") {
    const auto path = scratch("broken.json");
    write_text(path, "{ not json");
    CHECK_THROWS_AS(read_json(path), std::invalid_argument);
  }

  TEST_CASE("SVG output is well formed") {
    svg::LinePlot plot;
    plot.title = "a < b & c";
    plot.log_y = true;
    plot.series.push_back({"s", {1, 2, 3}, {1, 1e-3, 1e-6}});
    const auto text = svg::render(plot);
    CHECK(text.rfind("<svg", 0) == 0);
    CHECK(text.find("</svg>") != std::string::npos);
    CHECK(text.find("a &lt; b &amp; c") != std::string::npos);
    CHECK(text.find("<polyline") != std::string::npos);

    svg::HeatmapGrid grid;
    grid.panels.push_back({"p", {1e-3, 1e-2}, {1e-3, 1}, {{0.0, NAN}, {0.5, 1.0}}});
    const auto h = svg::render(grid);
    CHECK(h.find("<rect") != std::string::npos);
    CHECK(h.find("nan") == std::string::npos);

    svg::ScatterGrid sg;
    sg.panels.push_back({"xy", {0, 1}, {1, 0}, {0, 1}});
    CHECK(svg::render(sg).find("<circle") != std::string::npos);
    CHECK(svg::sequential_color(0.0) != svg::sequential_color(1.0));
    CHECK(svg::diverging_color(0.5) == "#ffffff");
  }
}
