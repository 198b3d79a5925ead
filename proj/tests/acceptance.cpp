// Acceptance run: one PASS/FAIL line per criterion, each backed by a single
// CLI invocation (printed underneath). Exit status 0 iff every line passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curtainlab/harness/experiments.hpp"
#include "curtainlab/harness/presets.hpp"
#include "curtainlab/stats.hpp"

using namespace curtainlab;
using namespace curtainlab::harness;

namespace {

struct Outcome {
  RunResult result;
  double seconds = 0.0;
  std::string cli;
};

std::uint64_t g_seed = 7;
std::map<std::string, Outcome> g_cache;

// Runs `curtainlab <args>` in process; identical argument strings share a run.
const Outcome& invoke(const std::string& args) {
  const std::string cli = "curtainlab " + args + " --seed " + std::to_string(g_seed);
  if (auto it = g_cache.find(cli); it != g_cache.end()) return it->second;
  static const std::map<std::string, std::string> keys{
      {"--preset", "run.preset"}, {"--n", "walk.n"},       {"--trials", "walk.trials"},
      {"--L", "curtains.L"},      {"--seed", "run.seed"}, {"--epsilon", "monitor.epsilon"}};
  std::istringstream in(args + " --seed " + std::to_string(g_seed));
  std::string word, flag;
  in >> word;
  const auto cmd = parse_command(word);
  if (!cmd) throw std::invalid_argument("unknown command " + word);
  auto cfg = default_config();
  while (in >> flag >> word) set_key(cfg, keys.at(flag), word);
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  o.result = run(*cmd, cfg, g_seed);
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.cli = cli;
  return g_cache.emplace(cli, std::move(o)).first->second;
}

std::string cnt_str(std::size_t n) { return std::to_string(n); }

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::vector<double> column(const RunResult& r, const std::string& table, const std::string& col) {
  for (const auto& t : r.tables) {
    if (t.name() != table) continue;
    std::vector<double> out;
    for (const auto& row : t.to_json()) out.push_back(std::stod(row.at(col).get<std::string>()));
    return out;
  }
  throw std::runtime_error("missing table " + table);
}

bool checks_pass(const RunResult& r, const std::string& contains, std::string& detail) {
  bool ok = true, any = false;
  for (const auto& c : r.checks)
    if (c.name.find(contains) != std::string::npos) {
      any = true;
      if (!c.passed) {
        ok = false;
        detail += " [failed: " + c.name + ": " + c.detail + "]";
      }
    }
  if (!any) detail += " [no check matching '" + contains + "']";
  return ok && any;
}

struct Criterion {
  int id;
  std::string title;
  std::string args;
  std::function<bool(const Outcome&, std::string&)> evaluate;
};

const std::string kF2Clt = "clt --preset f2-uniform --n 10000 --trials 2000";
const std::string kF2Walk = "walk --preset f2-uniform --n 5000 --trials 100 --L 1";

std::vector<Criterion> criteria() {
  std::vector<Criterion> cs;
  cs.push_back({1, "free-group drift", kF2Clt, [](const Outcome& o, std::string& d) {
    const double lambda = o.result.report.at("f2-uniform").at("clt").at("lambda");
    d = "lambda-hat " + fmt(lambda, 6) + " (oracle 0.5, tol 0.01), " + fmt(o.seconds, 3) + " s";
    return std::abs(lambda - 0.5) < 0.01 && o.seconds < 30.0;
  }});
  cs.push_back({2, "free-group CLT", kF2Clt, [](const Outcome& o, std::string& d) {
    const auto sn = column(o.result, "f2-uniform-s_n", "S_n");
    const double h = o.result.report.at("f2-uniform").at("clt").at("lattice");
    const auto ks = h > 0 ? stats::ks_test_normal_lattice(sn, 0.0, 0.75, h)
                          : stats::ks_test_normal(sn, 0.0, 0.75);
    d = "KS vs N(0, 3/4): D " + fmt(ks.statistic) + ", p " + fmt(ks.p_value) + " (lattice " +
        fmt(h) + ")";
    return ks.statistic < 0.05 && ks.p_value > 0.01;
  }});
  cs.push_back({3, "variance formula", kF2Clt, [](const Outcome& o, std::string& d) {
    const auto& c = o.result.report.at("f2-uniform").at("clt");
    const double s2 = c.at("sigma2"), emp = c.at("empirical_variance");
    d = "sigma2-hat " + fmt(s2) + " in [0.70, 0.80], Var(S_n) " + fmt(emp);
    return s2 >= 0.70 && s2 <= 0.80 && std::abs(s2 - emp) < 0.05;
  }});
  cs.push_back({4, "psi estimation", kF2Clt, [](const Outcome& o, std::string& d) {
    const auto& p = o.result.report.at("f2-uniform").at("psi");
    const double lo = p.at("inf"), hi = p.at("sup"), a = p.at("sup_abs"), b = p.at("sup_abs_doubled");
    const std::size_t n = p.at("points");
    d = cnt_str(n) + " points, psi in [" + fmt(lo) + ", " + fmt(hi) + "], doubling shift " +
        fmt(std::abs(a - b));
    return n >= 100 && lo >= -0.80 && hi <= -0.70 && std::abs(a - b) < 0.02;
  }});
  cs.push_back({5, "cocycle identity", "cocycle-audit --preset f2-uniform,fuchsian-schottky",
                [](const Outcome& o, std::string& d) {
    bool ok = true;
    for (const char* p : {"f2-uniform", "fuchsian-schottky"}) {
      const auto& c = o.result.report.at(p).at("cocycle");
      const double res = c.at("max_residual");
      const std::size_t n = c.at("triples");
      d += std::string(d.empty() ? "" : "; ") + c.at("space").get<std::string>() + ": " +
           cnt_str(n) + " triples, max residual " + fmt(res);
      ok = ok && n >= 10000 && res < 1e-8;
    }
    return ok;
  }});
  cs.push_back({6, "contracting fraction",
                "contracting --preset fuchsian-schottky,euclidean-centered,product-tree-line "
                "--trials 500",
                [](const Outcome& o, std::string& d) {
    d = "Schottky";
    for (const auto& p : o.result.report.at("fuchsian-schottky").at("contracting").at("points"))
      d += " " + fmt(p.at("fraction").get<double>(), 3) + "@" + cnt_str(p.at("n"));
    d += "; " + fmt(o.seconds, 3) + " s";
    return checks_pass(o.result, "fraction", d) && o.seconds < 60.0;
  }});
  cs.push_back({7, "curtain audits", "curtain-audit --preset all",
                [](const Outcome& o, std::string& d) {
    bool ok = checks_pass(o.result, "", d);
    std::size_t records = 0;
    for (const auto& [preset, rep] : o.result.report.items()) {
      const bool flat = !preset_info(preset).non_elementary;
      for (const auto& rec : rep.at("audits")) {
        ++records;
        const std::string op = rec.at("op");
        const std::size_t n = rec.at("configurations"), bad = rec.at("violations");
        const bool vacuous = rec.at("verdict") == "vacuous";
        if (vacuous && flat && op.rfind("bottleneck", 0) == 0) {
          d += " " + preset + " " + op + " vacuous;";
          continue;
        }
        if (n < 1000 || bad != 0 || vacuous) {
          ok = false;
          d += " " + preset + " " + op + ": " + cnt_str(n) + " configurations, " + cnt_str(bad) +
               " violations;";
        }
      }
    }
    d = cnt_str(records) + " audit records" +
        (ok ? ", zero violations, >= 1000 configurations each;" : ";") + d;
    return ok;
  }});
  cs.push_back({8, "metric sandwich", "geometry-audit --preset all",
                [](const Outcome& o, std::string& d) {
    bool ok = checks_pass(o.result, "d_inf", d) && checks_pass(o.result, "flat plane", d);
    std::size_t spaces = 0;
    for (const auto& [preset, rep] : o.result.report.items()) {
      ++spaces;
      ok = ok && rep.at("metric").at("pairs").get<std::size_t>() >= 1000;
    }
    d = cnt_str(spaces) + " spaces, >= 1000 pairs each" + d;
    return ok;
  }});
  cs.push_back({9, "Busemann-displacement gap", kF2Walk, [](const Outcome& o, std::string& d) {
    const auto& g = o.result.report.at("f2-uniform").at("gap");
    const double slope = g.at("max_slope"), gap = g.at("max_gap");
    const std::size_t n = g.at("trajectories");
    d = cnt_str(n) + " trajectories, max slope " + fmt(slope) + ", max gap " + fmt(gap);
    return n >= 100 && checks_pass(o.result, "gap slope", d) && gap < 50.0;
  }});
  cs.push_back({10, "geometric estimates monitor", kF2Walk, [](const Outcome& o, std::string& d) {
    const auto& m = o.result.report.at("f2-uniform").at("monitor");
    const double rate = m.at("pass_rate");
    d = "pass rate " + fmt(rate) + " over " + cnt_str(m.at("pairs")) + " pairs, n <= " +
        cnt_str(m.at("n")) + ", L " + std::to_string(m.at("L").get<int>());
    return rate >= 0.95 && checks_pass(o.result, "geometric estimates", d);
  }});
  cs.push_back({11, "stationarity", kF2Clt, [](const Outcome& o, std::string& d) {
    const auto& s = o.result.report.at("f2-uniform").at("stationarity");
    const double tv = s.at("discrepancy"), ab = s.at("cylinder_ab");
    d = "TV " + fmt(tv) + " on depth-" + cnt_str(s.at("depth")) + " cylinders over " +
        cnt_str(s.at("samples")) + " samples, freq(ab) " + fmt(ab) + " (oracle 1/12)";
    return tv < 0.03 && std::abs(ab - 1.0 / 12.0) < 0.01;
  }});
  cs.push_back({12, "non-degeneracy", "clt --preset fuchsian-schottky,dirac-a --n 2000 --trials 1000",
                [](const Outcome& o, std::string& d) {
    const auto& c = o.result.report.at("fuchsian-schottky").at("clt");
    d = "Schottky sigma2-hat " + fmt(c.at("sigma2").get<double>()) + " +- " +
        fmt(c.at("sigma2_se").get<double>());
    return checks_pass(o.result, "fuchsian-schottky: sigma2 > 3 standard errors", d) &&
           checks_pass(o.result, "dirac-a: degenerate walk flagged", d);
  }});
  return cs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("curtainlab acceptance criteria");
  app.add_option("--seed", g_seed, "master seed for every invocation");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : criteria()) {
    std::string detail;
    bool ok = false;
    std::string cli = "curtainlab " + c.args;
    try {
      const auto& o = invoke(c.args);
      cli = o.cli;
      ok = c.evaluate(o, detail);
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << ": " << detail
              << "\n      " << cli << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << 12 - failed << "/12" << std::endl;
  return failed ? 1 : 0;
}
