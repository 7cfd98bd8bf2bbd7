#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "tml/gluing.hpp"
#include "tml/paths.hpp"

namespace tml {

struct InvariantTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_failure;  // path of the first violation
};

/// (l, J, I, c, case label).
using GluingHistogramKey = std::tuple<int, int, int, int, char>;

struct GluingSuiteReport {
  std::size_t paths = 0;
  std::vector<InvariantTally> invariants;
  std::map<GluingHistogramKey, std::size_t> histogram;

  std::size_t violations() const;
  bool ok() const { return violations() == 0; }
};

/// Invariant names, in report order.
inline const std::vector<std::string>& gluing_invariant_names() {
  static const std::vector<std::string> names = {
      "edge_conservation", "length_bookkeeping", "case_evenness",       "origins_marked",
      "cycle_counts",      "odd_degree_even",    "self_intersections"};
  return names;
}

/// Runs every gluing invariant on one path and adds to the report. Marked
/// origins and the self-intersection count are checked only on contributing
/// paths.
void check_gluing_invariants(const ClosedPath& p, GluingSuiteReport& report);

/// All n^{2s} closed sequences.
GluingSuiteReport gluing_suite_exhaustive(int n, int s);

/// `count` paths from random_closed_path with seeds derive_seed(seed, i).
GluingSuiteReport gluing_suite_random(int n, int s, std::size_t count, std::uint64_t seed);

/// Half the draws are uniform sequences on [1, n]; the other half are uniform
/// sequences over a random set of 2..5 vertices, which produces repeated
/// edges and non-trivial gluings.
ClosedPath random_closed_path(int n, int s, std::uint64_t seed);

struct FiberGroup {
  std::vector<int> p_prime;
  int m = 0;
  int l = 0;
  int J = 0;
  int c = 0;  // -1 when grouped by (l, J) only
  std::size_t count = 0;
  double bound = 0.0;
};

struct InsertionReport {
  std::size_t base_paths = 0;
  std::size_t fiber_paths = 0;
  std::size_t groups = 0;
  std::size_t violations = 0;
  std::size_t round_trip_failures = 0;  // glue(P).total_length != len(P) - 2l
  std::vector<FiberGroup> worst;        // violating groups, else the tightest one
};

/// Every even path of half-length 1..max_half_length on n = 1..n_max vertices:
/// fiber sizes grouped by (l, J) against caseA_insertion_bound(m, l, J).
InsertionReport insertion_dominance(int max_half_length, int n_max);

/// Same fibers grouped by (l, J, c) against the refined term with s = m + l.
InsertionReport refined_insertion_dominance(int max_half_length, int n_max, double C);

/// Smallest C making every (l, J, c) fiber group respect the refined term.
double calibrate_refined_constant(int max_half_length, int n_max);

struct SecondGluingReport {
  std::size_t paths = 0;
  std::size_t violations = 0;
  std::string first_failure;
  std::size_t merges = 0;
};

/// On each Case-C path: D paths even, I - I1 of them, total length 2s - 2l - 2I1.
SecondGluingReport second_gluing_suite(std::span<const ClosedPath> paths);

/// Case-C paths among random_closed_path draws, in draw order.
std::vector<ClosedPath> find_case_c_paths(int n, int s, std::size_t count, std::uint64_t seed,
                                          std::size_t max_draws = 1000000);

}  // namespace tml
