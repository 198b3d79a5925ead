#include "curtainlab/harness/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "curtainlab/harness/presets.hpp"

namespace curtainlab::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("bad value for " + key + ": '" + v + "'");
  return out;
}

std::size_t positive(const std::string& key, const std::string& v) {
  const auto x = parse_number<std::size_t>(key, v);
  if (x == 0) throw ConfigError(key + " must be positive");
  return x;
}

std::string join_grid(const std::vector<std::size_t>& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + std::to_string(g[i]);
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

struct Entry {
  ConfigKey key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

Entry size_key(const char* name, std::size_t ExperimentConfig::*field, const char* fallback,
               const char* doc) {
  return {{name, fallback, doc},
          [name, field](ExperimentConfig& c, const std::string& v) { c.*field = positive(name, v); },
          [field](const ExperimentConfig& c) { return std::to_string(c.*field); }};
}

const std::vector<Entry>& table() {
  static const std::vector<Entry> t = {
      {{"run.preset", "f2-uniform", "preset, comma-separated list, or all"},
       [](ExperimentConfig& c, const std::string& v) {
         try {
           expand_presets(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(e.what());
         }
         c.preset = v;
       },
       [](const ExperimentConfig& c) { return c.preset; }},
      {{"run.seed", "", "master seed; required when writing outputs"},
       [](ExperimentConfig& c, const std::string& v) {
         if (v.empty()) c.seed.reset();
         else c.seed = parse_number<std::uint64_t>("run.seed", v);
       },
       [](const ExperimentConfig& c) { return c.seed ? std::to_string(*c.seed) : ""; }},
      {{"run.threads", "1", "worker threads"},
       [](ExperimentConfig& c, const std::string& v) {
         c.threads = static_cast<unsigned>(positive("run.threads", v));
       },
       [](const ExperimentConfig& c) { return std::to_string(c.threads); }},
      {{"run.out", "", "output directory; empty prints a summary only"},
       [](ExperimentConfig& c, const std::string& v) { c.out = v; },
       [](const ExperimentConfig& c) { return c.out; }},
      {{"run.format", "csv", "table format: csv or json"},
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "csv") c.format = Format::csv;
         else if (v == "json") c.format = Format::json;
         else throw ConfigError("run.format must be csv or json");
       },
       [](const ExperimentConfig& c) { return c.format == Format::csv ? "csv" : "json"; }},
      size_key("walk.n", &ExperimentConfig::n, "1000", "walk length n"),
      size_key("walk.trials", &ExperimentConfig::trials, "200", "number of trajectories M"),
      {{"walk.stride", "0", "trajectory CSV row stride; 0 picks max(1, n/1000)"},
       [](ExperimentConfig& c, const std::string& v) {
         c.stride = parse_number<std::size_t>("walk.stride", v);
       },
       [](const ExperimentConfig& c) { return std::to_string(c.stride); }},
      size_key("drift.trials", &ExperimentConfig::drift_trials, "20000", "independent batch for the centring drift"),
      size_key("boundary.depth", &ExperimentConfig::boundary_depth, "200", "walk length behind each boundary sample"),
      size_key("boundary.count", &ExperimentConfig::boundary_count, "10000", "forward (nu) boundary samples"),
      size_key("boundary.check_count", &ExperimentConfig::check_count, "20000", "reversed (nu-check) samples for psi"),
      size_key("psi.points", &ExperimentConfig::psi_points, "100", "random boundary points in the psi table"),
      size_key("variance.points", &ExperimentConfig::variance_points, "2000", "nu samples in the variance formula"),
      size_key("gap.trajectories", &ExperimentConfig::gap_trajectories, "100", "trajectories in the gap audit"),
      size_key("monitor.pairs", &ExperimentConfig::monitor_pairs, "100", "(x, y) pairs in the geometric monitor"),
      size_key("monitor.n", &ExperimentConfig::monitor_n, "2000", "monitor horizon"),
      size_key("monitor.from", &ExperimentConfig::monitor_from, "100", "first n counted in the pass rate"),
      {{"monitor.epsilon", "0", "epsilon; 0 means lambda/4"},
       [](ExperimentConfig& c, const std::string& v) {
         c.epsilon = parse_number<double>("monitor.epsilon", v);
         if (c.epsilon < 0) throw ConfigError("monitor.epsilon must be >= 0");
       },
       [](const ExperimentConfig& c) { return format_double(c.epsilon); }},
      {{"curtains.L", "0", "separation constant; 0 means search (monitor) or {1,2} (audits)"},
       [](ExperimentConfig& c, const std::string& v) {
         c.L = parse_number<int>("curtains.L", v);
         if (c.L < 0 || c.L > 10) throw ConfigError("curtains.L must lie in 0..10");
       },
       [](const ExperimentConfig& c) { return std::to_string(c.L); }},
      {{"contracting.grid", "25,50,100,200", "comma-separated n values"},
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.clear();
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ',')) c.grid.push_back(positive("contracting.grid", trim(item)));
         if (c.grid.empty()) throw ConfigError("contracting.grid is empty");
       },
       [](const ExperimentConfig& c) { return join_grid(c.grid); }},
      size_key("curtains.configs", &ExperimentConfig::curtain_configs, "1000", "configurations per curtain audit"),
      size_key("metric.pairs", &ExperimentConfig::metric_pairs, "1000", "point pairs in the metric sandwich audit"),
      size_key("cocycle.triples", &ExperimentConfig::cocycle_triples, "10000", "(g1, g2, xi) triples per space"),
      {{"budget.candidates", "200", "candidate geodesics per L-separation query"},
       [](ExperimentConfig& c, const std::string& v) {
         c.candidates = static_cast<int>(positive("budget.candidates", v));
       },
       [](const ExperimentConfig& c) { return std::to_string(c.candidates); }},
      {{"budget.samples", "32", "sampled points per curtain"},
       [](ExperimentConfig& c, const std::string& v) {
         c.samples = static_cast<int>(positive("budget.samples", v));
       },
       [](const ExperimentConfig& c) { return std::to_string(c.samples); }},
  };
  return t;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const auto& e : table()) out.push_back(e.key);
    return out;
  }();
  return keys;
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  for (const auto& e : table()) e.set(c, e.key.fallback);
  return c;
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& e : table())
    if (key == e.key.name) {
      e.set(cfg, value);
      return;
    }
  throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    try {
      set_key(base, key, trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string canonical_text(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& e : table()) out += std::string(e.key.name) + "=" + e.get(cfg) + "\n";
  return out;
}

std::optional<std::uint64_t> resolve_seed(const ExperimentConfig& cfg) {
  if (cfg.seed) return cfg.seed;
  if (const char* env = std::getenv("CURTAINLAB_SEED"); env && *env) {
    std::uint64_t v = 0;
    const std::string s(env);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw ConfigError("CURTAINLAB_SEED is not an unsigned integer");
    return v;
  }
  return std::nullopt;
}

}  // namespace curtainlab::harness
