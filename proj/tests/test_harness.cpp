#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curtainlab/harness/experiments.hpp"
#include "curtainlab/harness/presets.hpp"
#include "curtainlab/walker/isometry.hpp"

using namespace curtainlab;
using namespace curtainlab::harness;

namespace {

ExperimentConfig small(const std::string& preset) {
  auto cfg = default_config();
  set_key(cfg, "run.preset", preset);
  set_key(cfg, "walk.n", "200");
  set_key(cfg, "walk.trials", "50");
  return cfg;
}

std::string csv_bodies(const RunResult& r) {
  std::string out;
  for (const auto& t : r.tables) out += t.name() + "\n" + t.to_csv();
  return out;
}

}  // namespace

// ---- Config ----

TEST(Config, DefaultsRoundTrip) {
  const auto cfg = default_config();
  EXPECT_EQ(cfg.n, 1000u);
  EXPECT_EQ(canonical_text(parse_config(canonical_text(cfg))), canonical_text(cfg));
  for (const auto& k : config_keys()) EXPECT_NE(std::string(k.doc), "") << k.name;
}

TEST(Config, SectionsAndComments) {
  const auto cfg = parse_config(
      "# comment\n"
      "[walk]\n"
      "n = 123   # trailing\n"
      "trials=7\n"
      "\n"
      "[run]\n"
      "preset = tree-q3\n"
      "[curtains]\n"
      "L = 2\n");
  EXPECT_EQ(cfg.n, 123u);
  EXPECT_EQ(cfg.trials, 7u);
  EXPECT_EQ(cfg.preset, "tree-q3");
  EXPECT_EQ(cfg.L, 2);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  auto cfg = default_config();
  EXPECT_THROW(set_key(cfg, "walk.nn", "5"), ConfigError);
  EXPECT_THROW(set_key(cfg, "walk.n", "-5"), ConfigError);
  EXPECT_THROW(set_key(cfg, "walk.n", "ten"), ConfigError);
  EXPECT_THROW(set_key(cfg, "run.preset", "f2-uniform,nope"), ConfigError);
  EXPECT_THROW(parse_config("walk.n\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/curtainlab.cfg"), ConfigError);
}

TEST(Config, DigestIgnoresOutputAndThreads) {
  auto a = default_config(), b = default_config();
  set_key(b, "run.out", "/tmp/x");
  set_key(b, "run.threads", "4");
  EXPECT_EQ(config_digest(a), config_digest(b));
  set_key(b, "walk.n", "17");
  EXPECT_NE(config_digest(a), config_digest(b));
}

// ---- Presets ----

TEST(Presets, ListContainsRequiredEntries) {
  const auto& ps = list_presets();
  EXPECT_GE(ps.size(), 5u);
  for (const char* name : {"f2-uniform", "tree-q3", "fuchsian-schottky", "euclidean-centered",
                           "product-tree-line"})
    EXPECT_TRUE(std::any_of(ps.begin(), ps.end(), [&](const auto& p) { return p.name == name; }))
        << name;
  EXPECT_THROW(preset_info("f3"), std::invalid_argument);
  EXPECT_EQ(expand_presets("all").size(), ps.size());
  EXPECT_EQ(expand_presets(" f2-uniform , tree-q3"),
            (std::vector<std::string>{"f2-uniform", "tree-q3"}));
}

// Every reduced word of length <= 3 in the Schottky generators is loxodromic.
TEST(Presets, SchottkyGeneratorsPlayPingPong) {
  const geometry::HyperbolicPlane h;
  const auto a = schottky_a(), b = schottky_b();
  const std::vector<walker::Mobius> gens{a, b, walker::inverse(h, a), walker::inverse(h, b)};
  std::vector<std::pair<walker::Mobius, int>> words{{walker::identity(h), -1}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::pair<walker::Mobius, int>> next;
    for (const auto& [w, last] : words)
      for (int g = 0; g < 4; ++g) {
        if (last >= 0 && (g ^ 2) == last) continue;
        auto v = walker::compose(h, w, gens[static_cast<std::size_t>(g)]);
        const auto c = walker::classify(h, v);
        EXPECT_EQ(c.kind, walker::Kind::axial) << walker::format(h, v);
        EXPECT_EQ(c.contracting, walker::Contracting::yes);
        EXPECT_GT(c.translation_length, 1.0);
        next.emplace_back(std::move(v), g);
      }
    words = std::move(next);
  }
  EXPECT_EQ(words.size(), 4u * 3u * 3u);
}

// ---- Output ----

TEST(Output, NumbersAndTables) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-2.0), "-2");
  EXPECT_EQ(format_number(1e-300), "1e-300");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  Table t("x", {"a", "b"});
  t.add({"1", "2"}).add({"3", "4"});
  EXPECT_EQ(t.to_csv(), "a,b\n1,2\n3,4\n");
  EXPECT_EQ(t.to_json()[1]["b"], "4");
  EXPECT_THROW(t.add({"5"}), std::invalid_argument);
  EXPECT_EQ(digest("abc"), digest("abc"));
  EXPECT_NE(digest("abc"), digest("abd"));
}

TEST(Output, WritesTablesReportAndManifest) {
  auto cfg = small("euclidean-centered");
  const auto dir = std::filesystem::temp_directory_path() / "curtainlab-harness-test";
  std::filesystem::remove_all(dir);
  cfg.out = dir.string();
  cfg.seed = 3;
  const auto r = run(Command::contracting, cfg, 3);
  const auto manifest = write_outputs(r, cfg, 0.5);
  EXPECT_EQ(manifest["seed"], 3);
  EXPECT_EQ(manifest["command"], "contracting");
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
  std::ifstream in(dir / "euclidean-centered-contracting.csv");
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_EQ(body.str(), r.tables.front().to_csv());
  std::filesystem::remove_all(dir);
}

// ---- Experiments ----

TEST(Run, CsvBodiesAreDeterministicAcrossThreads) {
  auto cfg = small("f2-uniform");
  set_key(cfg, "gap.trajectories", "5");
  set_key(cfg, "monitor.pairs", "5");
  set_key(cfg, "monitor.n", "200");
  set_key(cfg, "run.out", "unused");
  const auto one = csv_bodies(run(Command::walk, cfg, 11));
  set_key(cfg, "run.threads", "3");
  EXPECT_EQ(csv_bodies(run(Command::walk, cfg, 11)), one);
  EXPECT_NE(csv_bodies(run(Command::walk, cfg, 12)), one);
}

TEST(Run, ContractingFractionsOnFlatPresetsAreZero) {
  auto cfg = small("euclidean-centered,product-tree-line");
  const auto r = run(Command::contracting, cfg, 5);
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.tables.size(), 2u);
  for (const auto& t : r.tables)
    for (const auto& row : t.to_json()) EXPECT_EQ(row["fraction"], "0") << t.name();
}

TEST(Run, CltNeedsEnoughTrials) {
  auto cfg = small("f2-uniform");
  EXPECT_THROW(run(Command::clt, cfg, 1), ConfigError);
}

TEST(Run, CommandsParse) {
  for (auto c : all_commands()) EXPECT_EQ(parse_command(to_string(c)), c);
  EXPECT_FALSE(parse_command("plot").has_value());
}
