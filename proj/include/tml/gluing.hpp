#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "tml/paths.hpp"

namespace tml {

/// Maximal run [first, last] of consecutive non-returned instants. The run
/// reads the path from left_vertex = i_{first-1} to right_vertex = i_last.
struct OddInterval {
  int first = 0;
  int last = 0;
  int left_vertex = 0;   // e_i
  int right_vertex = 0;  // f_i

  int size() const noexcept { return last - first + 1; }
};

struct OddStructure {
  std::vector<OddInterval> intervals;  // S_1..S_J, sorted
  int J = 0;
  int l = 0;
};

/// Throws std::domain_error for an even path.
OddStructure odd_interval_decomposition(const ClosedPath& p);

/// Piece P_k of the path between consecutive odd runs: it starts at time
/// `start` (vertex f_k, with f_0 = i_0) and ends at time `end` (vertex e_{k+1},
/// with e_{J+1} = i_0). May have length zero.
struct Subpath {
  int index = 0;
  int start = 0;
  int end = 0;
  std::vector<int> vertices;

  int left() const noexcept { return vertices.front(); }
  int right() const noexcept { return vertices.back(); }
  int length() const noexcept { return end - start; }
};

std::vector<Subpath> split_subpaths(const ClosedPath& p, const OddStructure& odd);

/// Subpath end identifier: 2k for the left end of P_k, 2k + 1 for its right end.
using EndId = int;
constexpr EndId left_end(int k) noexcept { return 2 * k; }
constexpr EndId right_end(int k) noexcept { return 2 * k + 1; }

/// One use of a subpath inside a trail.
struct TrailStep {
  int subpath = 0;
  bool reversed = false;

  EndId entry() const noexcept { return reversed ? right_end(subpath) : left_end(subpath); }
  EndId exit() const noexcept { return reversed ? left_end(subpath) : right_end(subpath); }
};

/// A closed run of glued subpaths (the paper's W~ paths).
struct Trail {
  int origin = 0;
  std::vector<TrailStep> steps;
};

enum class GluingCase { A, B, C };
char case_label(GluingCase c) noexcept;

struct GluedDecomposition {
  std::vector<Walk> w_paths;  // W_0..W_{I-1}
  std::vector<int> origins;   // v_0 = i_0, v_1, ...
  int I = 0;
  GluingCase gluing_case = GluingCase::A;
  int total_length = 0;  // 2s - 2l
  int l = 0;
  int J = 0;
  std::vector<Trail> trails;  // in construction order, empty trails included
  /// Pairs of subpath ends joined at a common vertex, including the pair that
  /// closes each trail. Empty for even paths.
  std::vector<std::pair<EndId, EndId>> pairings;
};

/// Deterministic gluing: among unglued subpaths touching the current end,
/// the lowest index wins, read forward when its left end matches.
GluedDecomposition glue(const ClosedPath& p);

struct GluingCount {
  std::size_t count = 0;       // distinct pairing systems the procedure can produce
  std::map<int, int> e_hist;   // i -> E_i, vertices that are 2i odd-run endpoints
  bool truncated = false;      // search stopped at the node budget
};

/// Explores every admissible choice in the gluing procedure and counts the
/// distinct end pairings. Requires l >= 1.
GluingCount count_gluings(const ClosedPath& p, std::size_t node_budget = 1u << 22);

/// prod_{i >= 2} (i!)^{E_i}.
double gluing_factorial_product(const std::map<int, int>& e_hist);
/// prod_v (2A_v - 1)!! over odd-run endpoint vertices with 2A_v occurrences.
double gluing_pairing_product(const std::map<int, int>& e_hist);

struct OddCycle {
  std::vector<int> runs;    // indices (0-based) of the odd runs S_k in the cycle
  std::vector<Edge> edges;  // odd edges in the cycle
};

struct CycleDecomposition {
  std::vector<OddCycle> cycles;
  int c = 0;
  std::map<int, int> sizes;  // cycle length -> number of cycles (c_i)
};

/// Cycles of odd runs linked through the gluing pairings; the two root ends
/// (start of P_0, end of P_J) are joined to each other.
CycleDecomposition cycle_decomposition(const ClosedPath& p);
CycleDecomposition cycle_decomposition(const ClosedPath& p, const GluedDecomposition& g);

struct SecondGluingResult {
  std::vector<Walk> d_paths;
  int merges = 0;  // I_1
};

/// Merges walks along shared odd edges until all are even. Throws
/// std::domain_error when the union of the walks has an odd edge.
SecondGluingResult second_gluing(std::span<const Walk> w_paths);

/// Statistics of the concatenated reading W_0 W_1 ... of even walks.
///
/// A vertex's type is its number of marked arrivals, with the starting vertex
/// of W_0 counted as one arrival; moving to the origin of the next walk is not
/// an arrival. A type-2 vertex is non-closed, and counts toward r, when the
/// first departure from it after its second marked arrival is marked or leaves
/// along a different edge than that arrival; with no later departure it is
/// closed.
struct PathStatistics {
  int kappa = 0;
  int r = 0;
  std::map<int, int> n_k;    // k >= 2 -> number of vertices of type k
  int self_intersections = 0;  // sum_{k >= 2} n_k
  std::map<int, int> nu;     // vertex -> distinct incident edges
  int nu_max = 0;
  std::map<int, int> M;      // vertex -> sum of nu over distinct neighbours
};

PathStatistics path_statistics(std::span<const Walk> walks);
PathStatistics path_statistics(const ClosedPath& p_even);

/// All closed walks from the origin of p_prime whose edge multiset is that of
/// p_prime plus one copy each of 2l distinct edges of p_prime, 1 <= l <= l_max,
/// together with p_prime itself; lexicographic order. Requires p_prime even,
/// length <= 8 and n <= 4.
std::vector<ClosedPath> insertion_enumerate(const ClosedPath& p_prime, int l_max);

}  // namespace tml
