#include "tml/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "tml/bounds.hpp"
#include "tml/rng.hpp"

namespace tml {

namespace {

enum Invariant : std::size_t {
  kConservation,
  kLength,
  kEvenness,
  kOrigins,
  kCycles,
  kOddDegree,
  kSelfIntersections,
};

void tally(GluingSuiteReport& report, Invariant which, bool ok, const ClosedPath& p) {
  auto& t = report.invariants[which];
  ++t.checked;
  if (ok) return;
  if (t.violations++ == 0) t.first_failure = p.to_string();
}

void init_report(GluingSuiteReport& report) {
  if (!report.invariants.empty()) return;
  for (const auto& name : gluing_invariant_names()) report.invariants.push_back({name, 0, 0, {}});
}

// Every origin after the first is the arrival vertex of a marked step read
// earlier in the concatenation W_0 W_1 ...
bool origins_are_marked(const GluedDecomposition& g) {
  std::map<Edge, int> running;
  std::set<int> arrived;
  for (std::size_t i = 0; i < g.w_paths.size(); ++i) {
    if (i > 0 && !arrived.contains(g.origins[i])) return false;
    const auto& vs = g.w_paths[i].vertices;
    for (std::size_t j = 1; j < vs.size(); ++j)
      if (++running[Edge::of(vs[j - 1], vs[j])] % 2 == 1) arrived.insert(vs[j]);
  }
  return true;
}

struct FiberKey {
  std::size_t base;
  int l;
  int J;
  int c;
  friend auto operator<=>(const FiberKey&, const FiberKey&) = default;
};

// Calls visit(p_prime, fiber) for every even base path; the fiber excludes
// p_prime itself.
template <typename F>
std::size_t for_each_fiber(int max_half_length, int n_max, F&& visit) {
  std::size_t bases = 0;
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 1; m <= max_half_length; ++m) {
      for_each_closed_path(n, m, [&](const ClosedPath& p_prime) {
        if (!is_even_path(p_prime)) return;
        ++bases;
        auto fiber = insertion_enumerate(p_prime, m);
        fiber.erase(fiber.begin());
        visit(p_prime, fiber);
      });
    }
  }
  return bases;
}

InsertionReport fiber_dominance(int max_half_length, int n_max, bool refined, double C) {
  InsertionReport report;
  double tightest = -1.0;
  report.base_paths = for_each_fiber(max_half_length, n_max, [&](const ClosedPath& p_prime,
                                                                 const std::vector<ClosedPath>& fiber) {
    std::map<FiberKey, std::size_t> groups;
    for (const auto& p : fiber) {
      ++report.fiber_paths;
      const auto odd = odd_interval_decomposition(p);
      const auto g = glue(p);
      if (g.total_length != p.length() - 2 * odd.l) ++report.round_trip_failures;
      const int c = refined ? cycle_decomposition(p, g).c : -1;
      ++groups[{0, odd.l, odd.J, c}];
    }
    const int m = p_prime.s();
    for (const auto& [key, count] : groups) {
      ++report.groups;
      const double bound =
          refined ? std::exp(refined_insertion_log_term(m + key.l, key.l, key.J, key.c, C))
                  : caseA_insertion_bound(m, key.l, key.J);
      FiberGroup fg{p_prime.vertices(), m, key.l, key.J, key.c, count, bound};
      const double ratio = static_cast<double>(count) / bound;
      if (static_cast<double>(count) > bound * (1.0 + 1e-12)) {
        ++report.violations;
        if (report.worst.size() < 10) report.worst.push_back(fg);
      } else if (report.violations == 0 && ratio > tightest) {
        tightest = ratio;
        report.worst = {fg};
      }
    }
  });
  return report;
}

}  // namespace

std::size_t GluingSuiteReport::violations() const {
  std::size_t v = 0;
  for (const auto& t : invariants) v += t.violations;
  return v;
}

void check_gluing_invariants(const ClosedPath& p, GluingSuiteReport& report) {
  init_report(report);
  ++report.paths;
  const auto g = glue(p);
  const auto mult = edge_multiplicities(p);
  int l = 0;
  int J = 0;
  if (!is_even_path(p)) {
    const auto odd = odd_interval_decomposition(p);
    l = odd.l;
    J = odd.J;
  }

  EdgeCount rebuilt;
  for (const auto& w : g.w_paths)
    for (const auto& [e, k] : edge_multiplicities(w.vertices)) rebuilt[e] += k;
  for (const auto& [e, k] : mult)
    if (k % 2 == 1) ++rebuilt[e];
  std::erase_if(rebuilt, [](const auto& kv) { return kv.second == 0; });
  tally(report, kConservation, rebuilt == mult, p);

  int total = 0;
  for (const auto& w : g.w_paths) total += w.length();
  tally(report, kLength, total == p.length() - 2 * l && g.total_length == total && g.l == l, p);

  std::size_t odd_walks = 0;
  EdgeCount union_counts;
  for (const auto& w : g.w_paths) {
    if (!is_even_walk(w.vertices)) ++odd_walks;
    for (const auto& [e, k] : edge_multiplicities(w.vertices)) union_counts[e] += k;
  }
  bool union_even = true;
  for (const auto& [e, k] : union_counts) union_even = union_even && k % 2 == 0;
  bool evenness = union_even && (g.I == 1) == (g.gluing_case == GluingCase::A);
  if (g.gluing_case == GluingCase::C)
    evenness = evenness && odd_walks > 0;
  else
    evenness = evenness && odd_walks == 0;
  tally(report, kEvenness, evenness, p);

  const bool contributing = is_contributing(p);
  if (contributing) tally(report, kOrigins, origins_are_marked(g), p);

  const auto cycles = cycle_decomposition(p, g);
  int edges_in_cycles = 0;
  for (const auto& [len, count] : cycles.sizes) edges_in_cycles += len * count;
  tally(report, kCycles, cycles.c <= J && J <= 2 * l && edges_in_cycles == 2 * l, p);

  std::map<int, int> degree;
  for (const auto& [e, k] : mult) {
    if (k % 2 == 0) continue;
    ++degree[e.u];
    ++degree[e.v];
  }
  bool degrees_even = true;
  for (const auto& [v, d] : degree) degrees_even = degrees_even && d % 2 == 0;
  tally(report, kOddDegree, degrees_even, p);

  if (l > 0 && contributing) {
    const auto st = path_statistics(std::span<const Walk>(g.w_paths));
    tally(report, kSelfIntersections, st.self_intersections >= cycles.c, p);
  }

  ++report.histogram[{l, J, g.I, cycles.c, case_label(g.gluing_case)}];
}

GluingSuiteReport gluing_suite_exhaustive(int n, int s) {
  GluingSuiteReport report;
  init_report(report);
  for_each_closed_path(n, s, [&](const ClosedPath& p) { check_gluing_invariants(p, report); });
  return report;
}

ClosedPath random_closed_path(int n, int s, std::uint64_t seed) {
  if (n < 1 || s < 1) throw std::invalid_argument("random_closed_path needs n, s >= 1");
  CounterRng rng(seed);
  std::vector<int> pool;
  if (rng.below(2) == 0 || n <= 2) {
    pool.resize(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
  } else {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    const auto k = static_cast<std::size_t>(std::min<std::uint64_t>(2 + rng.below(4), static_cast<std::uint64_t>(n)));
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(all.size() - i));
      std::swap(all[i], all[j]);
    }
    pool.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  }
  std::vector<int> vs(2 * static_cast<std::size_t>(s) + 1);
  for (std::size_t j = 0; j + 1 < vs.size(); ++j) vs[j] = pool[static_cast<std::size_t>(rng.below(pool.size()))];
  vs.back() = vs.front();
  return ClosedPath(std::move(vs), n);
}

GluingSuiteReport gluing_suite_random(int n, int s, std::size_t count, std::uint64_t seed) {
  GluingSuiteReport report;
  init_report(report);
  for (std::size_t i = 0; i < count; ++i) check_gluing_invariants(random_closed_path(n, s, derive_seed(seed, i)), report);
  return report;
}

InsertionReport insertion_dominance(int max_half_length, int n_max) {
  return fiber_dominance(max_half_length, n_max, false, 0.0);
}

InsertionReport refined_insertion_dominance(int max_half_length, int n_max, double C) {
  return fiber_dominance(max_half_length, n_max, true, C);
}

double calibrate_refined_constant(int max_half_length, int n_max) {
  double C = 0.0;
  for_each_fiber(max_half_length, n_max, [&](const ClosedPath& p_prime, const std::vector<ClosedPath>& fiber) {
    std::map<FiberKey, std::size_t> groups;
    for (const auto& p : fiber) {
      const auto odd = odd_interval_decomposition(p);
      ++groups[{0, odd.l, odd.J, cycle_decomposition(p).c}];
    }
    const int m = p_prime.s();
    for (const auto& [key, count] : groups) {
      const double unit = refined_insertion_log_term(m + key.l, key.l, key.J, key.c, 1.0);
      C = std::max(C, std::exp((std::log(static_cast<double>(count)) - unit) / (2.0 * key.l)));
    }
  });
  return C;
}

SecondGluingReport second_gluing_suite(std::span<const ClosedPath> paths) {
  SecondGluingReport report;
  for (const auto& p : paths) {
    ++report.paths;
    const auto g = glue(p);
    bool ok = true;
    try {
      const auto out = second_gluing(g.w_paths);
      report.merges += static_cast<std::size_t>(out.merges);
      int total = 0;
      for (const auto& d : out.d_paths) {
        total += d.length();
        ok = ok && is_even_walk(d.vertices);
      }
      ok = ok && total == p.length() - 2 * g.l - 2 * out.merges;
      ok = ok && static_cast<int>(out.d_paths.size()) == g.I - out.merges;
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok && report.violations++ == 0) report.first_failure = p.to_string();
  }
  return report;
}

std::vector<ClosedPath> find_case_c_paths(int n, int s, std::size_t count, std::uint64_t seed,
                                          std::size_t max_draws) {
  std::vector<ClosedPath> out;
  for (std::size_t i = 0; i < max_draws && out.size() < count; ++i) {
    auto p = random_closed_path(n, s, derive_seed(seed, i));
    if (is_even_path(p)) continue;
    if (glue(p).gluing_case == GluingCase::C) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace tml
