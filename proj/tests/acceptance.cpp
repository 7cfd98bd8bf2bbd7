// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "tml/bounds.hpp"
#include "tml/cli.hpp"
#include "tml/dyck.hpp"
#include "tml/gluing.hpp"
#include "tml/paths.hpp"
#include "tml/spectral.hpp"
#include "tml/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  const auto d = tml::named_distribution("skew12");
  const double exact = tml::exact_expected_trace(d, 3, 2, true);
  const auto mc = tml::mc_expected_trace(d, 3, 2, 100000, 1);
  const double z = std::abs(mc.mean - exact) / mc.std_error;
  const double t = seconds_since(t0);
  return {z <= 4.0 && t < 30.0, fmt("exact=%.6f mc=%.6f stderr=%.4g z=%.3f time=%.2fs", exact, mc.mean, mc.std_error, z, t)};
}

Outcome catalan_wigner() {
  const auto d = tml::named_distribution("rademacher");
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n)
    for (int s = 1; s <= 3; ++s) {
      const double total = tml::exact_expected_trace(d, n, s, false);
      const double even = tml::even_path_contribution(d, n, s, false).even;
      worst = std::max(worst, std::abs(total - even) / total);
    }
  bool counts = true;
  for (int s = 1; s <= 10; ++s)
    counts &= static_cast<long>(tml::enumerate_dyck(s).size()) == tml::catalan(s).get_si();
  return {worst <= 1e-12 && counts, fmt("max relative gap=%.3g dyck counts %s", worst, counts ? "match" : "differ")};
}

Outcome gluing_suite() {
  const auto t0 = Clock::now();
  auto exhaustive = tml::gluing_suite_exhaustive(3, 3);
  const auto random = tml::gluing_suite_random(20, 10, 10000, 1);
  const double t = seconds_since(t0);
  std::string detail = fmt("paths=%zu+%zu", exhaustive.paths, random.paths);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < exhaustive.invariants.size(); ++i) {
    const auto& a = exhaustive.invariants[i];
    const auto& b = random.invariants[i];
    violations += a.violations + b.violations;
    detail += fmt(" %s=%zu/%zu", a.name.c_str(), a.violations + b.violations, a.checked + b.checked);
  }
  detail += fmt(" time=%.2fs", t);
  return {violations == 0 && t < 60.0, detail};
}

Outcome insertion() {
  const auto r = tml::insertion_dominance(3, 3);
  std::string detail = fmt("bases=%zu fiber_paths=%zu groups=%zu violations=%zu round_trip_failures=%zu",
                           r.base_paths, r.fiber_paths, r.groups, r.violations, r.round_trip_failures);
  if (!r.worst.empty())
    detail += fmt(" tightest=%zu/%.0f", r.worst.front().count, r.worst.front().bound);
  return {r.violations == 0 && r.round_trip_failures == 0 && r.fiber_paths > 0, detail};
}

Outcome second_gluing() {
  std::vector<tml::ClosedPath> paths;
  for (const auto& v : std::vector<std::vector<int>>{{1, 1, 2, 2, 5, 1, 5, 1, 1, 5, 1, 1, 1},
                                                     {1, 5, 5, 3, 5, 1, 2, 2, 3, 5, 5, 4, 1},
                                                     {1, 2, 3, 3, 2, 3, 3, 3, 1, 4, 1}})
    paths.emplace_back(v, 5);
  for (auto& p : tml::find_case_c_paths(12, 8, 200, 1)) paths.push_back(std::move(p));
  const auto r = tml::second_gluing_suite(paths);
  return {r.violations == 0 && r.paths == paths.size(),
          fmt("paths=%zu merges=%zu violations=%zu", r.paths, r.merges, r.violations)};
}

Outcome appendix_scaling() {
  const auto t0 = Clock::now();
  bool exact_ok = true;
  for (int s = 1; s <= 10; ++s) {
    const auto r = tml::expected_k_functional(s, 0, tml::ExpectationMode::Exact);
    exact_ok &= tml::k_functional_total(s) == tml::fixtures::kKTotals[static_cast<std::size_t>(s) - 1];
    exact_ok &= r.value == static_cast<double>(mpq_class(tml::fixtures::kKTotals[static_cast<std::size_t>(s) - 1],
                                                         tml::fixtures::kCatalan[static_cast<std::size_t>(s) - 1]).get_d());
  }
  std::vector<double> xs;
  std::vector<double> ys;
  std::string means;
  for (int s : {16, 32, 64, 128, 256}) {
    const auto r = tml::expected_k_functional(s, 0, tml::ExpectationMode::MonteCarlo, 10000, 1000 + s);
    xs.push_back(s);
    ys.push_back(r.value);
    means += fmt(" E[K](%d)=%.1f", s, r.value);
  }
  const double slope = tml::loglog_slope(xs, ys);
  const double t = seconds_since(t0);
  return {exact_ok && slope >= 1.35 && slope <= 1.65 && t < 300.0,
          fmt("slope=%.4f exact fixtures %s", slope, exact_ok ? "match" : "differ") + means + fmt(" time=%.2fs", t)};
}

Outcome stay_above_probe() {
  bool exact_ok = true;
  for (int s = 1; s <= 10; ++s)
    exact_ok &= tml::stay_above_total(s) == tml::fixtures::kStayAboveTotals[static_cast<std::size_t>(s) - 1];
  const auto r = tml::stay_above_full_window_expectation(256, tml::ExpectationMode::MonteCarlo, 10000, 7);
  const double ratio = r.value / (2.0 * std::sqrt(256.0 / std::numbers::pi));
  return {exact_ok && ratio >= 0.7 && ratio <= 1.3,
          fmt("exact fixtures %s mc=%.4f stderr=%.3g ratio=%.4f", exact_ok ? "match" : "differ", r.value, r.std_error, ratio)};
}

Outcome beta() {
  const double b1 = tml::beta_sum(1);
  const double b2 = tml::beta_sum(2);
  bool finite = true;
  for (int I = 1; I <= 100; ++I) finite &= std::isfinite(tml::beta_sum(I));
  const bool ok = std::abs(b1 - std::numbers::pi) <= 1e-12 && std::abs(b2 - 8.0 / 3.0) <= 1e-12 && finite;
  return {ok, fmt("B1=%.15f B2=%.15f finite to 100: %s", b1, b2, finite ? "yes" : "no")};
}

Outcome edge_experiment() {
  const auto t0 = Clock::now();
  const auto d = tml::named_distribution("skew12");
  const std::vector<std::size_t> ns = {500, 2000};
  const auto rows = tml::edge_exceedance_experiment(d, ns, 200, 0.05, 1);
  const double t = seconds_since(t0);
  const double f500 = rows[0].exceed_fraction;
  const double f2000 = rows[1].exceed_fraction;
  return {f2000 <= 0.05 && f500 >= f2000 && t < 600.0,
          fmt("frac(500)=%.3f frac(2000)=%.3f mean_lmax(2000)=%.5f threshold(2000)=%.5f time=%.1fs", f500, f2000,
              rows[1].mean_lambda_max, rows[1].threshold, t)};
}

Outcome concentration() {
  const auto d = tml::named_distribution("rademacher");
  std::vector<double> grid;
  for (int t = 1; t <= 8; ++t) grid.push_back(t);
  const auto r = tml::concentration_experiment(d, 500, 1000, grid, 1);
  int violations = 0;
  std::string tails;
  for (const auto& row : r.rows) {
    violations += row.empirical_tail > row.bound ? 1 : 0;
    tails += fmt(" %.3g", row.empirical_tail);
  }
  return {violations == 0, fmt("violations=%d tails:", violations) + tails};
}

Outcome bound_table() {
  std::vector<double> ratios;
  for (double n : {1e3, 1e4, 1e5}) {
    const int s = static_cast<int>(std::floor(std::pow(n, 0.45)));
    ratios.push_back(tml::caseA_contribution_bound(s, n, 1.0, 1.0, 1.0).log_total - tml::log_even_scale(s, n, 1.0));
  }
  const bool decreasing = ratios[1] < ratios[0] && ratios[2] < ratios[1];
  const auto conv = tml::catalan_convolution_check(10000);
  return {decreasing && conv.holds,
          fmt("log ratio n=1e3,1e4,1e5: %.2f %.2f %.2f (%s); convolution s<=1e4 %s, max ratio %.5f at s=%d",
              ratios[0], ratios[1], ratios[2], decreasing ? "decreasing" : "not decreasing",
              conv.holds ? "holds" : "fails", conv.max_ratio, conv.argmax)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "tml_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> commands = {
      {"trace-mc", "--n", "20", "--s", "3", "--trials", "200", "--seed", "5"},
      {"trace-exact", "--n", "3", "--s", "2", "--dist", "skew12"},
      {"spectrum", "--n", "100", "--seed", "5"},
      {"edge-exceed", "--n", "50,100", "--trials", "20", "--seed", "5"},
      {"concentration", "--n", "50", "--trials", "200", "--seed", "5"},
      {"verify-gluing", "--n", "20", "--s", "10", "--random", "1000", "--seed", "5"},
      {"bounds-table"},
      {"dyck-stats", "--s", "64", "--mode", "mc", "--trials", "2000", "--seed", "5"},
  };
  std::size_t compared = 0;
  std::vector<std::string> mismatched;
  for (const auto& cmd : commands) {
    for (const char* run : {"a", "b"}) {
      std::vector<std::string> args = {"tml"};
      args.insert(args.end(), cmd.begin(), cmd.end());
      args.insert(args.end(), {"--out", (root / run).string(), "--quiet"});
      std::ostringstream out;
      std::ostringstream err;
      if (tml::cli::run(args, out, err) != 0) mismatched.push_back(cmd[0] + " (exit)");
    }
  }
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    if (entry.path().extension() != ".csv") continue;
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), {});
    };
    ++compared;
    if (slurp(entry.path()) != slurp(root / "b" / entry.path().filename()))
      mismatched.push_back(entry.path().filename().string());
  }
  fs::remove_all(root);
  std::string detail = fmt("subcommands=%zu csv files compared=%zu mismatches=%zu", commands.size(), compared,
                           mismatched.size());
  for (const auto& m : mismatched) detail += " " + m;
  return {mismatched.empty() && compared >= commands.size(), detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "oracle-equivalence", oracle_equivalence},
      {2, "catalan-wigner-consistency", catalan_wigner},
      {3, "gluing-invariant-suite", gluing_suite},
      {4, "insertion-bound-dominance", insertion},
      {5, "second-gluing", second_gluing},
      {6, "k-functional-scaling", appendix_scaling},
      {7, "stay-above-probe", stay_above_probe},
      {8, "beta-sum", beta},
      {9, "edge-experiment", edge_experiment},
      {10, "concentration", concentration},
      {11, "bound-table-sanity", bound_table},
      {12, "cli-determinism", determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.contains(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
