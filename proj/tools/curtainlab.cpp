#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "curtainlab/harness/experiments.hpp"
#include "curtainlab/harness/presets.hpp"

using namespace curtainlab::harness;

namespace {

struct Overrides {
  std::string preset, config, out, format;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n, trials;
  std::optional<int> L;
  std::optional<double> epsilon;
  std::optional<unsigned> threads;
};

void add_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--preset", o.preset, "preset name, comma-separated list, or all");
  cmd->add_option("--config", o.config, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "master seed (falls back to CURTAINLAB_SEED)");
  cmd->add_option("--n", o.n, "walk length");
  cmd->add_option("--trials", o.trials, "number of trajectories M");
  cmd->add_option("--L", o.L, "separation constant");
  cmd->add_option("--epsilon", o.epsilon, "monitor epsilon (default lambda/4)");
  cmd->add_option("--out", o.out, "output directory (requires a seed)");
  cmd->add_option("--format", o.format, "csv or json");
  cmd->add_option("--threads", o.threads, "worker threads");
}

ExperimentConfig build_config(const Overrides& o) {
  ExperimentConfig cfg = o.config.empty() ? default_config() : load_config(o.config);
  auto set = [&](const char* key, const std::string& v) { set_key(cfg, key, v); };
  if (!o.preset.empty()) set("run.preset", o.preset);
  if (o.seed) set("run.seed", std::to_string(*o.seed));
  if (o.n) set("walk.n", std::to_string(*o.n));
  if (o.trials) set("walk.trials", std::to_string(*o.trials));
  if (o.L) set("curtains.L", std::to_string(*o.L));
  if (o.epsilon) set("monitor.epsilon", format_number(*o.epsilon));
  if (!o.out.empty()) set("run.out", o.out);
  if (!o.format.empty()) set("run.format", o.format);
  if (o.threads) set("run.threads", std::to_string(*o.threads));
  return cfg;
}

int execute(Command cmd, const Overrides& o) {
  ExperimentConfig cfg;
  std::uint64_t seed = 0;
  try {
    cfg = build_config(o);
    const auto resolved = resolve_seed(cfg);
    if (!resolved && !cfg.out.empty())
      throw ConfigError("a seed (--seed or CURTAINLAB_SEED) is required with --out");
    seed = resolved.value_or(0);
    cfg.seed = seed;
  } catch (const ConfigError& e) {
    std::cerr << "curtainlab: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  try {
    r = run(cmd, cfg, seed);
  } catch (const ConfigError& e) {
    std::cerr << "curtainlab: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "curtainlab: " << e.what() << "\n";
    return 2;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::cout << to_string(cmd) << " preset=" << cfg.preset << " seed=" << seed << "\n";
  for (const auto& c : r.checks)
    std::cout << (c.passed ? "  PASS  " : "  FAIL  ") << c.name << "  [" << c.detail << "]\n";
  if (!cfg.out.empty()) {
    write_outputs(r, cfg, wall);
    std::cout << "wrote " << r.tables.size() + 2 << " files to " << cfg.out << "\n";
  } else {
    std::cout << r.report.dump(2) << "\n";
  }
  if (!r.passed()) {
    std::cerr << "failing checks:\n";
    for (const auto& c : r.checks)
      if (!c.passed) std::cerr << "  " << c.name << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("curtainlab: random walks, curtains and limit laws", "curtainlab");
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  std::map<CLI::App*, Command> commands;
  Overrides o;
  for (Command c : all_commands()) {
    auto* sub = app.add_subcommand(to_string(c));
    add_flags(sub, o);
    commands[sub] = c;
  }
  auto* list = app.add_subcommand("list-presets", "print the built-in presets");
  auto* keys = app.add_subcommand("config-keys", "print every config key with its default");
  app.get_subcommand("walk")->description("trajectories, displacement/Busemann gap, monitor");
  app.get_subcommand("clt")->description("drift, boundary samples, psi, variance formula, CLT");
  app.get_subcommand("contracting")->description("fraction of contracting Z_n on a grid of n");
  app.get_subcommand("curtain-audit")->description("partition, thickness, star convexity, bottleneck");
  app.get_subcommand("geometry-audit")->description("metric axioms and the d_L <= d_inf sandwich");
  app.get_subcommand("cocycle-audit")->description("Busemann cocycle identity and Lipschitz bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (const auto& p : list_presets())
      std::cout << p.name << "\t" << p.space << "\t" << p.description << "\n";
    return 0;
  }
  if (keys->parsed()) {
    for (const auto& k : config_keys())
      std::cout << k.name << " = " << k.fallback << "\t# " << k.doc << "\n";
    return 0;
  }
  for (const auto& [sub, cmd] : commands)
    if (sub->parsed()) return execute(cmd, o);
  return 2;
}
