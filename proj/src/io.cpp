#include "scatterlab/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace scatterlab {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) { add_row(header); }

void CsvTable::add_row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw std::logic_error(fmt::format("CSV row has {} fields, header has {}", fields.size(), columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    text_ += csv_escape(fields[i]);
  }
  text_ += "\r\n";
}

void CsvTable::add_row(const std::vector<std::string>& labels, const std::vector<double>& values) {
  std::vector<std::string> fields = labels;
  fields.reserve(labels.size() + values.size());
  for (const double v : values) fields.push_back(format_number(v));
  add_row(fields);
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, text_); }

CsvData read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      field.clear();
      record.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw std::invalid_argument(fmt::format("unterminated quote in '{}'", path.string()));
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw std::invalid_argument(fmt::format("'{}' is empty", path.string()));

  CsvData data;
  data.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != data.header.size()) {
      throw std::invalid_argument(fmt::format("'{}' line {}: expected {} fields, got {}", path.string(), r + 1,
                                              data.header.size(), records[r].size()));
    }
    data.rows.push_back(std::move(records[r]));
  }
  return data;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(fmt::format("cannot open '{}'", path.string()));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

void write_signals_csv(const std::filesystem::path& path, const SignalSet& set) {
  std::vector<std::string> header{"t"};
  header.insert(header.end(), set.names.begin(), set.names.end());
  CsvTable table(header);
  const std::size_t len = set.signals.empty() ? 0 : set.signals.front().size();
  for (std::size_t t = 0; t < len; ++t) {
    std::vector<double> row;
    row.reserve(set.signals.size());
    for (const auto& s : set.signals) row.push_back(s.at(t));
    table.add_row({std::to_string(t)}, row);
  }
  table.write(path);
}

void write_f64_le(const std::filesystem::path& path, std::span<const double> values) {
  std::string bytes(values.size() * 8, '\0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + static_cast<std::size_t>(b)] = static_cast<char>((bits >> (8 * b)) & 0xff);
  }
  write_text(path, bytes);
}

std::vector<double> read_f64_le(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument(fmt::format("cannot open '{}'", path.string()));
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() % 8 != 0) throw std::invalid_argument(fmt::format("'{}' is not a float64 array", path.string()));
  std::vector<double> values(bytes.size() / 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + static_cast<std::size_t>(b)])) << (8 * b);
    }
    values[i] = std::bit_cast<double>(bits);
  }
  return values;
}

void write_signals_binary(const std::filesystem::path& path, const SignalSet& set, nlohmann::json meta) {
  const std::size_t len = set.signals.empty() ? 0 : set.signals.front().size();
  std::vector<double> flat;
  flat.reserve(len * set.signals.size());
  for (const auto& s : set.signals) {
    if (s.size() != len) throw std::logic_error("signals in a set must share one length");
    flat.insert(flat.end(), s.begin(), s.end());
  }
  write_f64_le(path, flat);
  meta["dtype"] = "<f8";
  meta["shape"] = {set.signals.size(), len};
  meta["names"] = set.names;
  write_json(std::filesystem::path(path.string() + ".json"), meta);
}

SignalSet read_signals(const std::filesystem::path& path) {
  SignalSet set;
  if (path.extension() == ".csv") {
    const auto data = read_csv(path);
    if (data.header.size() < 2 || data.header.front() != "t") {
      throw std::invalid_argument(fmt::format("'{}': expected a 't' column followed by signal columns", path.string()));
    }
    set.names.assign(data.header.begin() + 1, data.header.end());
    set.signals.assign(set.names.size(), std::vector<double>(data.rows.size()));
    for (std::size_t t = 0; t < data.rows.size(); ++t) {
      for (std::size_t c = 1; c < data.header.size(); ++c) {
        try {
          set.signals[c - 1][t] = std::stod(data.rows[t][c]);
        } catch (const std::exception&) {
          throw std::invalid_argument(fmt::format("'{}': bad number '{}'", path.string(), data.rows[t][c]));
        }
      }
    }
    return set;
  }

  const auto meta = read_json(std::filesystem::path(path.string() + ".json"));
  const auto flat = read_f64_le(path);
  const auto shape = meta.at("shape").get<std::vector<std::size_t>>();
  if (shape.size() != 2 || shape[0] * shape[1] != flat.size()) {
    throw std::invalid_argument(fmt::format("'{}': shape does not match file size", path.string()));
  }
  set.names = meta.at("names").get<std::vector<std::string>>();
  for (std::size_t s = 0; s < shape[0]; ++s) {
    set.signals.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(s * shape[1]),
                             flat.begin() + static_cast<std::ptrdiff_t>((s + 1) * shape[1]));
  }
  return set;
}

void write_layer_dump(const std::filesystem::path& prefix, const ScatteringLayer& layer, const Filterbank& fb) {
  for (const auto& p : layer.paths()) {
    if (!is_valid_path(p, fb.size())) throw std::invalid_argument("layer path does not match filterbank");
  }
  write_f64_le(std::filesystem::path(prefix.string() + ".f64"), layer.data());
  nlohmann::json meta;
  meta["dtype"] = "<f8";
  meta["depth"] = layer.depth();
  meta["shape"] = {layer.path_count(), layer.signal_len()};
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& p : layer.paths()) {
    nlohmann::json lambdas = nlohmann::json::array();
    for (const auto j : p) lambdas.push_back(fb.lambda(j));
    paths.push_back({{"indices", p}, {"lambdas", lambdas}, {"label", path_label(p, fb)}});
  }
  meta["paths"] = paths;
  write_json(std::filesystem::path(prefix.string() + ".json"), meta);
}

std::vector<std::string> feature_header(const ScatteringFeature& feature, const Filterbank& fb) {
  std::vector<std::string> header{"S0"};
  for (const auto& p : feature.paths) header.push_back(path_label(p, fb));
  return header;
}

}  // namespace scatterlab
