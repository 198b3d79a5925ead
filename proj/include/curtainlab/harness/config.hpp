#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace curtainlab::harness {

/// Malformed or unknown configuration (CLI exit status 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct ExperimentConfig {
  std::string preset;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out;
  Format format = Format::csv;

  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t stride = 0;
  std::size_t drift_trials = 0;

  std::size_t boundary_depth = 0;
  std::size_t boundary_count = 0;
  std::size_t check_count = 0;
  std::size_t psi_points = 0;
  std::size_t variance_points = 0;

  std::size_t gap_trajectories = 0;
  std::size_t monitor_pairs = 0;
  std::size_t monitor_n = 0;
  std::size_t monitor_from = 0;
  /// 0 means lambda/4.
  double epsilon = 0.0;
  /// 0 means "search" for the monitor and {1, 2} for curtain audits.
  int L = 0;

  std::vector<std::size_t> grid;

  std::size_t curtain_configs = 0;
  std::size_t metric_pairs = 0;
  std::size_t cocycle_triples = 0;
  int candidates = 0;
  int samples = 0;
};

struct ConfigKey {
  const char* name;
  const char* fallback;
  const char* doc;
};

/// Every recognised key with its default; the single source of defaults.
const std::vector<ConfigKey>& config_keys();

ExperimentConfig default_config();

/// Applies one key = value assignment; unknown keys and bad values throw.
void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses `key = value` lines (dotted keys, optional [section] headers that
/// prefix the keys below them, # comments) on top of `base`.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = default_config());
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = default_config());

/// Canonical `key=value` lines in table order.
std::string canonical_text(const ExperimentConfig& cfg);

/// Seed from the config, else CURTAINLAB_SEED.
std::optional<std::uint64_t> resolve_seed(const ExperimentConfig& cfg);

}  // namespace curtainlab::harness
