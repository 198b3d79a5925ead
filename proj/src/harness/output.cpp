#include "curtainlab/harness/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "curtainlab/walker/isometry.hpp"

#ifndef CURTAINLAB_VERSION
#define CURTAINLAB_VERSION "unknown"
#endif

namespace curtainlab::harness {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::string digest(std::string_view text) { return walker::digest_text(std::string(text)); }

Table::Table(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("table needs columns");
}

Table& Table::add(std::vector<std::string> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("table " + name_ + ": row has wrong width");
  for (auto& c : row) cells_.push_back(std::move(c));
  return *this;
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&](auto first, auto last) {
    for (auto it = first; it != last; ++it) {
      if (it != first) out += ',';
      out += *it;
    }
    out += '\n';
  };
  line(columns_.begin(), columns_.end());
  for (std::size_t r = 0; r < rows(); ++r) {
    const auto b = cells_.begin() + static_cast<std::ptrdiff_t>(r * columns_.size());
    line(b, b + static_cast<std::ptrdiff_t>(columns_.size()));
  }
  return out;
}

Json Table::to_json() const {
  Json arr = Json::array();
  for (std::size_t r = 0; r < rows(); ++r) {
    Json row = Json::object();
    for (std::size_t c = 0; c < columns_.size(); ++c)
      row[columns_[c]] = cells_[r * columns_.size() + c];
    arr.push_back(std::move(row));
  }
  return arr;
}

bool RunResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string version_string() { return std::string("curtainlab ") + CURTAINLAB_VERSION; }

std::string config_digest(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.out.clear();
  c.threads = 1;
  return digest(canonical_text(c));
}

Json write_outputs(const RunResult& r, const ExperimentConfig& cfg, double wall_seconds) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  auto write = [&](const std::string& file, const std::string& body) {
    std::ofstream f(dir / file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / file).string());
    f << body;
    return (dir / file).string();
  };
  Json outputs = Json::array();
  for (const auto& t : r.tables) {
    const bool csv = cfg.format == Format::csv;
    outputs.push_back(write(t.name() + (csv ? ".csv" : ".json"),
                            csv ? t.to_csv() : t.to_json().dump(2) + "\n"));
  }
  outputs.push_back(write("report.json", r.report.dump(2) + "\n"));

  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json m = {{"command", r.command},
            {"config_digest", config_digest(cfg)},
            {"version", version_string()},
            {"seed", cfg.seed ? Json(*cfg.seed) : Json(nullptr)},
            {"config", canonical_text(cfg)},
            {"outputs", outputs},
            {"checks", checks},
            {"passed", r.passed()},
            {"wall_clock_seconds", wall_seconds}};
  write("manifest.json", m.dump(2) + "\n");
  return m;
}

}  // namespace curtainlab::harness
