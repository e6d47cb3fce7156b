#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scatterlab/filterbank.hpp"
#include "scatterlab/scattering.hpp"

namespace scatterlab {

// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

// RFC 4180 field quoting.
std::string csv_escape(std::string_view field);

/// Accumulates an RFC 4180 table (CRLF line endings) in memory.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& fields);
  // Leading label fields followed by numeric values.
  void add_row(const std::vector<std::string>& labels, const std::vector<double>& values);

  std::size_t columns() const { return columns_; }
  const std::string& text() const { return text_; }
  void write(const std::filesystem::path& path) const;

 private:
  std::size_t columns_;
  std::string text_;
};

struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvData read_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

struct SignalSet {
  std::vector<std::string> names;
  std::vector<std::vector<double>> signals;
};

// CSV layout: column "t" followed by one column per signal, one row per sample.
void write_signals_csv(const std::filesystem::path& path, const SignalSet& set);
// Raw little-endian float64, signal-major; sidecar <path>.json carries shape + names.
void write_signals_binary(const std::filesystem::path& path, const SignalSet& set, nlohmann::json meta);
// Dispatches on extension: ".csv" or anything else as raw float64 with sidecar.
SignalSet read_signals(const std::filesystem::path& path);

void write_f64_le(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_f64_le(const std::filesystem::path& path);

// <prefix>.f64 plus <prefix>.json describing shape and path list.
void write_layer_dump(const std::filesystem::path& prefix, const ScatteringLayer& layer, const Filterbank& fb);

std::vector<std::string> feature_header(const ScatteringFeature& feature, const Filterbank& fb);

}  // namespace scatterlab
