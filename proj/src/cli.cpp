#include "tml/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "tml/bounds.hpp"
#include "tml/dyck.hpp"
#include "tml/ensemble.hpp"
#include "tml/gluing.hpp"
#include "tml/paths.hpp"
#include "tml/rng.hpp"
#include "tml/spectral.hpp"
#include "tml/symmetric_eigen.hpp"
#include "tml/verify.hpp"

#ifndef TML_BUILD_ID
#define TML_BUILD_ID "unknown"
#endif

namespace tml::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string out_dir = ".";
  std::string format = "csv";
  int threads = 0;
  bool quiet = false;
};

/// What a subcommand hands back for writing.
struct Output {
  std::vector<std::pair<std::string, Table>> tables;  // (file stem, table); first is echoed
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  json notes = json::object();
  int exit_code = kExitOk;
};

std::string iso_time(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const double v = std::stod(tok);
    if (!(v >= 1.0)) throw CLI::ValidationError("--n", "sizes must be positive: " + tok);
    out.push_back(static_cast<std::size_t>(std::llround(v)));
  }
  if (out.empty()) throw CLI::ValidationError("--n", "empty list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

EntryDistribution load_distribution(const std::string& token) {
  try {
    return parse_distribution(token);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--dist", e.what());
  }
}

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) -> json {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, double>) {
      if (!std::isfinite(v)) return format_real(v);
    }
    return v;
  }, c);
}

// ---- subcommands ------------------------------------------------------------

struct TraceMcArgs {
  std::string dist = "rademacher";
  std::size_t n = 0;
  int s = 0;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

Output trace_mc(const TraceMcArgs& a) {
  const auto dist = load_distribution(a.dist);
  const auto est = mc_expected_trace(dist, a.n, a.s, a.trials, a.seed);
  Table t{{"n", "s", "trials", "mean", "std_error", "wigner_prediction"}, {}};
  t.rows.push_back({static_cast<std::int64_t>(a.n), static_cast<std::int64_t>(a.s),
                    static_cast<std::int64_t>(a.trials), est.mean, est.std_error,
                    wigner_trace_prediction(a.n, a.s, dist.sigma())});
  Output o;
  o.tables.emplace_back("trace-mc", std::move(t));
  o.parameters = {{"dist", dist.describe()}, {"n", std::to_string(a.n)}, {"s", std::to_string(a.s)},
                  {"trials", std::to_string(a.trials)}, {"seed", std::to_string(a.seed)}};
  o.seed = a.seed;
  return o;
}

struct TraceExactArgs {
  std::string dist = "rademacher";
  int n = 0;
  int s = 0;
  bool raw = false;
  std::string method = "enumerate";
};

Output trace_exact(const TraceExactArgs& a) {
  const auto dist = load_distribution(a.dist);
  Table t;
  const bool normalized = !a.raw;
  if (a.method == "enumerate") {
    const auto split = even_path_contribution(dist, a.n, a.s, normalized);
    t.header = {"n", "s", "normalized", "value", "even", "odd"};
    t.rows.push_back({static_cast<std::int64_t>(a.n), static_cast<std::int64_t>(a.s),
                      static_cast<std::int64_t>(normalized), split.total, split.even, split.odd});
  } else {
    const double v = exact_expected_trace_interpolated(dist, a.n, a.s, normalized);
    t.header = {"n", "s", "normalized", "value"};
    t.rows.push_back({static_cast<std::int64_t>(a.n), static_cast<std::int64_t>(a.s),
                      static_cast<std::int64_t>(normalized), v});
  }
  Output o;
  o.tables.emplace_back("trace-exact", std::move(t));
  o.parameters = {{"dist", dist.describe()}, {"n", std::to_string(a.n)}, {"s", std::to_string(a.s)},
                  {"normalized", normalized ? "true" : "false"}, {"method", a.method}};
  return o;
}

struct SpectrumArgs {
  std::string dist = "rademacher";
  std::size_t n = 0;
  std::size_t bins = 40;
  std::uint64_t seed = 1;
};

Output spectrum(const SpectrumArgs& a) {
  const auto dist = load_distribution(a.dist);
  const auto m = sample_symmetric_matrix(dist, a.n, a.seed);
  const auto ev = symmetric_eigenvalues(m.normalized_entries(), a.n);
  const double r = 2.0 * dist.sigma();
  const double lo = -r - 0.5;
  const double hi = r + 0.5;
  const auto counts = spectrum_histogram(ev, lo, hi, a.bins);
  const auto mass = semicircle_bin_mass(dist.sigma(), lo, hi, a.bins);
  Table t{{"bin_lo", "bin_hi", "count", "empirical_mass", "semicircle_mass"}, {}};
  const double width = (hi - lo) / static_cast<double>(a.bins);
  for (std::size_t b = 0; b < a.bins; ++b) {
    t.rows.push_back({lo + width * static_cast<double>(b), lo + width * static_cast<double>(b + 1),
                      static_cast<std::int64_t>(counts[b]),
                      static_cast<double>(counts[b]) / static_cast<double>(a.n), mass[b]});
  }
  Table summary{{"n", "lambda_min", "lambda_max", "spectral_norm", "edge"}, {}};
  summary.rows.push_back({static_cast<std::int64_t>(a.n), ev.front(), ev.back(),
                          std::max(std::abs(ev.front()), std::abs(ev.back())), r});
  Output o;
  o.tables.emplace_back("spectrum", std::move(t));
  o.tables.emplace_back("spectrum-summary", std::move(summary));
  o.parameters = {{"dist", dist.describe()}, {"n", std::to_string(a.n)},
                  {"bins", std::to_string(a.bins)}, {"seed", std::to_string(a.seed)}};
  o.seed = a.seed;
  return o;
}

struct EdgeArgs {
  std::string dist = "skew12";
  std::string n_list = "500,2000";
  std::size_t trials = 200;
  double epsilon = 0.05;
  std::uint64_t seed = 1;
};

Output edge_exceed(const EdgeArgs& a) {
  const auto dist = load_distribution(a.dist);
  if (!(a.epsilon > 0.0)) throw CLI::ValidationError("--epsilon", "must be positive");
  const auto ns = parse_size_list(a.n_list);
  const auto rows = edge_exceedance_experiment(dist, ns, a.trials, a.epsilon, a.seed);
  Table t{{"n", "trials", "epsilon", "threshold", "exceed_fraction", "mean_lambda_max"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({static_cast<std::int64_t>(r.n), static_cast<std::int64_t>(r.trials), r.epsilon,
                      r.threshold, r.exceed_fraction, r.mean_lambda_max});
  Output o;
  o.tables.emplace_back("edge-exceed", std::move(t));
  o.parameters = {{"dist", dist.describe()}, {"n", a.n_list}, {"trials", std::to_string(a.trials)},
                  {"epsilon", format_real(a.epsilon)}, {"seed", std::to_string(a.seed)}};
  o.seed = a.seed;
  return o;
}

struct ConcentrationArgs {
  std::string dist = "rademacher";
  std::size_t n = 0;
  std::size_t trials = 1000;
  std::string t_grid = "0,1,2,3,4,5,6,7,8";
  std::uint64_t seed = 1;
};

Output concentration(const ConcentrationArgs& a) {
  const auto dist = load_distribution(a.dist);
  if (a.trials < 100) throw CLI::ValidationError("--trials", "concentration needs at least 100 trials");
  const auto grid = parse_real_list(a.t_grid);
  const auto res = concentration_experiment(dist, a.n, a.trials, grid, a.seed);
  Table t{{"t", "empirical_tail", "bound", "bound_clamped"}, {}};
  for (const auto& r : res.rows) t.rows.push_back({r.t, r.empirical_tail, r.bound, std::min(1.0, r.bound)});
  Output o;
  o.tables.emplace_back("concentration", std::move(t));
  o.parameters = {{"dist", dist.describe()}, {"n", std::to_string(a.n)},
                  {"trials", std::to_string(a.trials)}, {"t", a.t_grid}, {"seed", std::to_string(a.seed)}};
  o.seed = a.seed;
  o.notes["centering"] = "sample mean of lambda_max substituted for E[lambda_max]";
  o.notes["sample_mean"] = res.sample_mean;
  o.notes["scale"] = res.scale;
  return o;
}

struct VerifyArgs {
  int n = 0;
  int s = 0;
  bool exhaustive = false;
  std::size_t random = 0;
  std::uint64_t seed = 1;
};

Output verify_gluing(const VerifyArgs& a) {
  if (a.exhaustive == (a.random > 0))
    throw CLI::ValidationError("verify-gluing", "choose exactly one of --exhaustive and --random");
  const auto report = a.exhaustive ? gluing_suite_exhaustive(a.n, a.s)
                                   : gluing_suite_random(a.n, a.s, a.random, a.seed);
  Table hist{{"l", "J", "I", "c", "case", "count"}, {}};
  for (const auto& [key, count] : report.histogram) {
    const auto& [l, J, I, c, label] = key;
    hist.rows.push_back({static_cast<std::int64_t>(l), static_cast<std::int64_t>(J),
                         static_cast<std::int64_t>(I), static_cast<std::int64_t>(c),
                         std::string(1, label), static_cast<std::int64_t>(count)});
  }
  Table inv{{"invariant", "checked", "violations", "status", "first_failure"}, {}};
  for (const auto& t : report.invariants)
    inv.rows.push_back({t.name, static_cast<std::int64_t>(t.checked), static_cast<std::int64_t>(t.violations),
                        std::string(t.violations == 0 ? "PASS" : "FAIL"), t.first_failure});
  Output o;
  o.tables.emplace_back("verify-gluing-invariants", std::move(inv));
  o.tables.emplace_back("verify-gluing-histogram", std::move(hist));
  o.parameters = {{"n", std::to_string(a.n)}, {"s", std::to_string(a.s)},
                  {"mode", a.exhaustive ? "exhaustive" : "random"}};
  if (!a.exhaustive) {
    o.parameters["random"] = std::to_string(a.random);
    o.parameters["seed"] = std::to_string(a.seed);
    o.seed = a.seed;
  }
  o.notes["paths"] = report.paths;
  o.notes["violations"] = report.violations();
  o.exit_code = report.ok() ? kExitOk : kExitInvariant;
  return o;
}

struct BoundsArgs {
  std::string kind = "all";
  std::string n_list = "1000,10000,100000";
  double exponent = 0.45;
  double sigma = 1.0;
  double K = 1.0;
  double C1 = 1.0;
  double C = 1.0;
  double eta = 1.0 / 22.0 - 0.01;
  double epsilon = 0.05;
  int l_max = 6;
};

Output bounds_table(const BoundsArgs& a) {
  static const std::vector<std::string> kinds = {"estbase", "kursk", "kursk-simplified", "novgorod",
                                                 "prop41", "minsk", "vladik"};
  const bool all = a.kind == "all";
  if (!all && std::find(kinds.begin(), kinds.end(), a.kind) == kinds.end())
    throw CLI::ValidationError("--kind", "unknown kind " + a.kind);
  const auto ns = parse_size_list(a.n_list);
  Table t{{"kind", "n", "s", "l", "index", "log_value", "value"}, {}};
  auto add = [&](const std::string& kind, double n, int s, int l, int index, double lv) {
    t.rows.push_back({kind, n, static_cast<std::int64_t>(s), static_cast<std::int64_t>(l),
                      static_cast<std::int64_t>(index), lv, std::exp(lv)});
  };
  auto want = [&](const char* k) { return all || a.kind == k; };
  const double belgorod = belgorod_constant(60);
  for (const std::size_t nn : ns) {
    const double n = static_cast<double>(nn);
    const int s = std::max(1, static_cast<int>(std::floor(std::pow(n, a.exponent))));
    const double scale = log_even_scale(s, n, a.sigma);
    if (want("estbase")) {
      const auto b = caseA_contribution_bound(s, n, a.sigma, a.K, a.C1);
      for (const auto& term : b.terms)
        if (term.l <= a.l_max) add("estbase", n, s, term.l, 0, term.log_value);
      add("estbase_ratio", n, s, 0, 0, b.log_total - scale);
    }
    if (want("kursk") && s <= kCaseBMaxS) {
      const auto b = caseB_contribution_bound(s, n, a.sigma, a.K, a.C1);
      for (const auto& term : b.terms)
        if (term.l <= a.l_max) add("kursk", n, s, term.l, 0, term.log_value);
      add("kursk_ratio", n, s, 0, 0, b.log_total - scale);
    }
    if (want("kursk-simplified")) {
      const auto b = caseB_simplified_bound(s, n, a.sigma, a.K, a.C1, belgorod);
      for (const auto& term : b.terms)
        if (term.l <= a.l_max) add("kursk_simplified", n, s, term.l, 0, term.log_value);
      add("kursk_simplified_ratio", n, s, 0, 0, b.log_total - scale);
    }
    if (want("novgorod")) {
      for (int i1 = 1; i1 <= 3 && 1 + i1 <= s; ++i1) {
        const auto c = caseC_reduction_bound(s, n, 1, i1 + 1, i1, 1.0, 1.0);
        add("caseC_trivial_ratio", n, s, 1, i1, c.log_trivial_ratio);
        add("caseC_refined_ratio", n, s, 1, i1, c.log_refined_ratio);
      }
    }
    if (want("prop41")) {
      const double sp = std::pow(n, 0.5 + a.eta);
      for (int l = 1; l <= a.l_max; ++l) {
        add("prop41_sum", n, static_cast<int>(std::floor(sp)), l, 0, refined_insertion_log_sum(sp, l, a.C));
        add("prop42_ratio", n, static_cast<int>(std::floor(sp)), l, 0,
            refined_insertion_log_ratio(n, l, a.eta, a.C));
      }
      add("odd_edge_cutoff", n, static_cast<int>(std::floor(sp)), 0, 0,
          std::log(odd_edge_cutoff(n, a.eta, a.epsilon)));
    }
    if (want("minsk")) {
      for (int r = 0; r <= 5; ++r) add("minsk_r", n, s, 0, r, minsk_log_bound(n, s, 0, a.eta, r, 0, 0, a.sigma, 1.0));
      for (int k = 0; k <= 5; ++k) add("minsk_k1", n, s, 0, k, minsk_log_bound(n, s, 0, a.eta, 0, k, 0, a.sigma, 1.0));
      for (int k = 0; k <= 5; ++k) add("minsk_k2", n, s, 0, k, minsk_log_bound(n, s, 0, a.eta, 0, 0, k, a.sigma, 1.0));
    }
    if (want("vladik")) {
      const double M = std::pow(n, 0.5 - a.eta - a.epsilon);
      for (int kappa = 1; kappa <= 5; ++kappa) add("vladik", n, s, 0, kappa, vladik_log_bound(s, kappa, M, 1.0));
    }
  }
  Output o;
  o.tables.emplace_back("bounds-table", std::move(t));
  o.parameters = {{"kind", a.kind},        {"n", a.n_list},           {"exponent", format_real(a.exponent)},
                  {"sigma", format_real(a.sigma)}, {"K", format_real(a.K)}, {"C1", format_real(a.C1)},
                  {"C", format_real(a.C)}, {"eta", format_real(a.eta)}, {"epsilon", format_real(a.epsilon)},
                  {"l_max", std::to_string(a.l_max)}};
  o.notes["belgorod_constant"] = belgorod;
  return o;
}

struct DyckArgs {
  int s = 0;
  std::string functional = "K";
  std::string mode = "exact";
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  int order = 2;
};

Output dyck_stats(const DyckArgs& a) {
  const auto mode = a.mode == "exact" ? ExpectationMode::Exact : ExpectationMode::MonteCarlo;
  Table t;
  if (a.functional == "maxlevel") {
    const auto tail = mode == ExpectationMode::Exact ? max_level_distribution_exact(a.s)
                                                     : max_level_tail(a.s, a.trials, a.seed);
    t.header = {"k", "probability", "fitted"};
    for (const auto& r : tail.rows) t.rows.push_back({static_cast<std::int64_t>(r.k), r.probability, r.fitted});
  } else {
    ExpectationResult r;
    int order = 0;
    if (a.functional == "K") {
      r = expected_k_functional(a.s, 0, mode, a.trials, a.seed);
    } else if (a.functional == "Ktensor") {
      order = a.order;
      r = expected_k_functional(a.s, a.order, mode, a.trials, a.seed);
    } else {
      r = stay_above_full_window_expectation(a.s, mode, a.trials, a.seed);
    }
    t.header = {"s", "functional", "order", "mode", "value", "std_error", "samples"};
    t.rows.push_back({static_cast<std::int64_t>(a.s), a.functional, static_cast<std::int64_t>(order), a.mode,
                      r.value, r.std_error, static_cast<std::int64_t>(r.samples)});
  }
  Output o;
  o.tables.emplace_back("dyck-stats", std::move(t));
  o.parameters = {{"s", std::to_string(a.s)}, {"functional", a.functional}, {"mode", a.mode}};
  if (a.functional == "Ktensor") o.parameters["order"] = std::to_string(a.order);
  if (mode == ExpectationMode::MonteCarlo) {
    o.parameters["trials"] = std::to_string(a.trials);
    o.parameters["seed"] = std::to_string(a.seed);
    o.seed = a.seed;
  }
  return o;
}

// ---- output -----------------------------------------------------------------

std::filesystem::path output_dir(const Common& c) {
  if (const char* env = std::getenv("TML_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return c.out_dir;
}

void write_outputs(const std::string& sub, const Common& c, const Output& o,
                   std::chrono::system_clock::time_point started, std::ostream& out) {
  const auto dir = output_dir(c);
  std::filesystem::create_directories(dir);
  json files = json::array();
  for (const auto& [stem, table] : o.tables) {
    const std::string name = stem + (c.format == "json" ? ".json" : ".csv");
    std::ofstream f(dir / name, std::ios::binary);
    f << (c.format == "json" ? to_json(table) : to_csv(table));
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    files.push_back(name);
  }
  json manifest;
  manifest["subcommand"] = sub;
  manifest["parameters"] = o.parameters;
  manifest["seed"] = o.seed;
  manifest["rng"] = std::string(kRngAlgorithm);
  manifest["build_id"] = TML_BUILD_ID;
  manifest["threads"] = omp_get_max_threads();
  manifest["started"] = iso_time(started);
  manifest["finished"] = iso_time(std::chrono::system_clock::now());
  manifest["output_files"] = files;
  manifest["exit_code"] = o.exit_code;
  if (!o.notes.empty()) manifest["notes"] = o.notes;
  std::ofstream mf(dir / (sub + ".manifest.json"), std::ios::binary);
  mf << manifest.dump(2) << '\n';
  if (!mf) throw std::runtime_error("cannot write manifest");
  if (!c.quiet) out << to_csv(o.tables.front().second);
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_cell(const Cell& c) {
  return std::visit([](const auto& v) -> std::string {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, std::string>) {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string q = "\"";
      for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    } else if constexpr (std::is_same_v<T, double>) {
      return format_real(v);
    } else {
      return std::to_string(v);
    }
  }, c);
}

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_cell(row[i]);
    s += '\n';
  }
  return s;
}

std::string to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace-method experiments for Wigner matrices with skewed entries", "tml"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out_dir, "Output directory (TML_OUTPUT_DIR takes precedence)");
    sub->add_option("--format", common.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", common.threads, "OpenMP threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    sub->add_flag("--quiet", common.quiet, "Do not echo the table");
  };

  std::string chosen;
  std::function<Output()> action;

  TraceMcArgs mc;
  auto* s_mc = app.add_subcommand("trace-mc", "Monte Carlo E[Tr A^{2s}]");
  s_mc->add_option("--dist", mc.dist, "rademacher, skew12 or support=..;probs=..");
  s_mc->add_option("--n", mc.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  s_mc->add_option("--s", mc.s, "Half power")->required()->check(CLI::PositiveNumber);
  s_mc->add_option("--trials", mc.trials, "Matrix draws")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  s_mc->add_option("--seed", mc.seed, "Base seed");
  add_common(s_mc);
  s_mc->callback([&] { chosen = "trace-mc"; action = [&] { return trace_mc(mc); }; });

  TraceExactArgs ex;
  auto* s_ex = app.add_subcommand("trace-exact", "Exact E[Tr A^{2s}] by path enumeration");
  s_ex->add_option("--dist", ex.dist, "Entry distribution");
  s_ex->add_option("--n", ex.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  s_ex->add_option("--s", ex.s, "Half power")->required()->check(CLI::PositiveNumber);
  s_ex->add_flag("--unnormalized", ex.raw, "Report E[Tr M^{2s}] instead of E[Tr A^{2s}]");
  s_ex->add_option("--method", ex.method, "enumerate or interpolate")
      ->check(CLI::IsMember({"enumerate", "interpolate"}));
  add_common(s_ex);
  s_ex->callback([&] { chosen = "trace-exact"; action = [&] { return trace_exact(ex); }; });

  SpectrumArgs sp;
  auto* s_sp = app.add_subcommand("spectrum", "Histogram of one normalized spectrum");
  s_sp->add_option("--dist", sp.dist, "Entry distribution");
  s_sp->add_option("--n", sp.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  s_sp->add_option("--bins", sp.bins, "Histogram bins")->check(CLI::PositiveNumber);
  s_sp->add_option("--seed", sp.seed, "Seed");
  add_common(s_sp);
  s_sp->callback([&] { chosen = "spectrum"; action = [&] { return spectrum(sp); }; });

  EdgeArgs ed;
  auto* s_ed = app.add_subcommand("edge-exceed", "Fraction of lambda_max above 2 sigma + n^(-6/11+eps)");
  s_ed->add_option("--dist", ed.dist, "Entry distribution");
  s_ed->add_option("--n", ed.n_list, "Comma-separated dimensions");
  s_ed->add_option("--trials", ed.trials, "Draws per dimension")->check(CLI::PositiveNumber);
  s_ed->add_option("--epsilon", ed.epsilon, "Exponent slack");
  s_ed->add_option("--seed", ed.seed, "Base seed");
  add_common(s_ed);
  s_ed->callback([&] { chosen = "edge-exceed"; action = [&] { return edge_exceed(ed); }; });

  ConcentrationArgs co;
  auto* s_co = app.add_subcommand("concentration", "Tail of |lambda_max - mean| against 4 exp(-t^2/32)");
  s_co->add_option("--dist", co.dist, "Entry distribution");
  s_co->add_option("--n", co.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  s_co->add_option("--trials", co.trials, "Draws (>= 100)");
  s_co->add_option("--t", co.t_grid, "Comma-separated t grid");
  s_co->add_option("--seed", co.seed, "Base seed");
  add_common(s_co);
  s_co->callback([&] { chosen = "concentration"; action = [&] { return concentration(co); }; });

  VerifyArgs ve;
  auto* s_ve = app.add_subcommand("verify-gluing", "Gluing invariant suite");
  s_ve->add_option("--n", ve.n, "Vertices")->required()->check(CLI::PositiveNumber);
  s_ve->add_option("--s", ve.s, "Half length")->required()->check(CLI::PositiveNumber);
  s_ve->add_flag("--exhaustive", ve.exhaustive, "All n^(2s) sequences");
  s_ve->add_option("--random", ve.random, "Number of random paths");
  s_ve->add_option("--seed", ve.seed, "Base seed for --random");
  add_common(s_ve);
  s_ve->callback([&] { chosen = "verify-gluing"; action = [&] { return verify_gluing(ve); }; });

  BoundsArgs bo;
  auto* s_bo = app.add_subcommand("bounds-table", "Sweeps of the odd-path bound formulas");
  s_bo->add_option("--kind", bo.kind, "all, estbase, kursk, kursk-simplified, novgorod, prop41, minsk, vladik");
  s_bo->add_option("--n", bo.n_list, "Comma-separated n values");
  s_bo->add_option("--exponent", bo.exponent, "s = floor(n^exponent)");
  s_bo->add_option("--sigma", bo.sigma, "Entry standard deviation");
  s_bo->add_option("--K", bo.K, "Support bound");
  s_bo->add_option("--C1", bo.C1, "Even-path constant");
  s_bo->add_option("--C", bo.C, "Refined insertion constant");
  s_bo->add_option("--eta", bo.eta, "s = n^(1/2+eta) for the refined sweeps");
  s_bo->add_option("--epsilon", bo.epsilon, "Slack in the odd-edge cutoff");
  s_bo->add_option("--l-max", bo.l_max, "Largest l listed")->check(CLI::PositiveNumber);
  add_common(s_bo);
  s_bo->callback([&] { chosen = "bounds-table"; action = [&] { return bounds_table(bo); }; });

  DyckArgs dy;
  auto* s_dy = app.add_subcommand("dyck-stats", "Dyck path functionals");
  s_dy->add_option("--s", dy.s, "Half length")->required()->check(CLI::PositiveNumber);
  s_dy->add_option("--functional", dy.functional, "K, Ktensor, pyat or maxlevel")
      ->check(CLI::IsMember({"K", "Ktensor", "pyat", "maxlevel"}));
  s_dy->add_option("--mode", dy.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  s_dy->add_option("--trials", dy.trials, "Samples in mc mode")->check(CLI::PositiveNumber);
  s_dy->add_option("--seed", dy.seed, "Base seed in mc mode");
  s_dy->add_option("--order", dy.order, "Tensor order for Ktensor")->check(CLI::PositiveNumber);
  add_common(s_dy);
  s_dy->callback([&] { chosen = "dyck-stats"; action = [&] { return dyck_stats(dy); }; });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (common.threads > 0) omp_set_num_threads(common.threads);
  const auto started = std::chrono::system_clock::now();
  try {
    const Output o = action();
    write_outputs(chosen, common, o, started, out);
    if (o.exit_code != kExitOk) err << chosen << ": invariant violations\n";
    return o.exit_code;
  } catch (const CLI::ParseError& e) {
    err << chosen << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << chosen << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << chosen << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << chosen << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tml::cli
