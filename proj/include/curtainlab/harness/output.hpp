#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "curtainlab/harness/config.hpp"
#include "json.hpp"

namespace curtainlab::harness {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal ('.' separator, locale independent).
std::string format_number(double x);

/// 64-bit FNV-1a as 16 hex digits.
std::string digest(std::string_view text);

/// Column-typed table emitted as CSV (header row, '\n' line ends) or JSON
/// (array of row objects).
class Table {
 public:
  Table(std::string name, std::vector<std::string> columns);

  const std::string& name() const { return name_; }
  void rename(std::string name) { name_ = std::move(name); }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return cells_.size() / columns_.size(); }

  Table& add(std::vector<std::string> row);
  std::string to_csv() const;
  Json to_json() const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::string> cells_;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunResult {
  std::string command;
  std::vector<Check> checks;
  std::vector<Table> tables;
  /// Written as report.json.
  Json report = Json::object();

  bool passed() const;
  void check(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

std::string version_string();

/// Digest of the canonical config minus output location and thread count,
/// which do not affect results.
std::string config_digest(const ExperimentConfig& cfg);

/// Writes every table, report.json and manifest.json into cfg.out and
/// returns the manifest.
Json write_outputs(const RunResult& r, const ExperimentConfig& cfg, double wall_seconds);

}  // namespace curtainlab::harness
