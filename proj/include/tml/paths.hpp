#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tml/ensemble.hpp"

namespace tml {

/// Non-oriented edge {u, v} with u <= v; u == v is a loop.
struct Edge {
  int u = 0;
  int v = 0;

  static constexpr Edge of(int a, int b) noexcept { return a <= b ? Edge{a, b} : Edge{b, a}; }
  constexpr bool is_loop() const noexcept { return u == v; }
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeCount = std::map<Edge, int>;

/// Closed walk i_0 -> ... -> i_L = i_0 on vertices 1..n. Unlike ClosedPath the
/// length may be odd or zero; the pieces produced by gluing are walks.
struct Walk {
  std::vector<int> vertices;  // L + 1 entries, first == last

  int length() const noexcept { return static_cast<int>(vertices.size()) - 1; }
  int origin() const noexcept { return vertices.front(); }
  /// Edge of step j, 1 <= j <= length().
  Edge step(int j) const noexcept { return Edge::of(vertices[static_cast<std::size_t>(j) - 1], vertices[static_cast<std::size_t>(j)]); }
  std::string to_string() const;
  friend bool operator==(const Walk&, const Walk&) = default;
};

/// Closed path of even length 2s on vertices 1..n.
class ClosedPath {
 public:
  /// Throws std::invalid_argument unless first == last, the length is even and
  /// positive, and every vertex lies in [1, n].
  ClosedPath(std::vector<int> vertices, int n);

  /// "1,2,1" style; n defaults to the largest vertex.
  static ClosedPath parse(std::string_view text, int n = 0);

  const std::vector<int>& vertices() const noexcept { return vertices_; }
  int n() const noexcept { return n_; }
  int length() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  int s() const noexcept { return length() / 2; }
  int origin() const noexcept { return vertices_.front(); }
  int operator[](std::size_t i) const noexcept { return vertices_[i]; }
  Edge step(int j) const noexcept { return Edge::of(vertices_[static_cast<std::size_t>(j) - 1], vertices_[static_cast<std::size_t>(j)]); }
  Walk walk() const { return Walk{vertices_}; }
  std::string to_string() const;

  friend bool operator==(const ClosedPath&, const ClosedPath&) = default;

 private:
  std::vector<int> vertices_;
  int n_ = 0;
};

EdgeCount edge_multiplicities(std::span<const int> vertices);
EdgeCount edge_multiplicities(const ClosedPath& p);

/// prod_e moment(k_e), divided by n^s when normalized.
double path_weight(const ClosedPath& p, const EntryDistribution& dist, bool normalized);

/// Sequences are visited in odometer order with i_0 the most significant
/// coordinate. Throws std::length_error when n^{2s} exceeds kEnumerationGuard.
inline constexpr double kEnumerationGuard = 1e8;
void check_enumeration_guard(int n, int s);
void for_each_closed_path(int n, int s, const std::function<void(const ClosedPath&)>& visit);

/// sum over all n^{2s} closed sequences of path_weight.
double exact_expected_trace(const EntryDistribution& dist, int n, int s, bool normalized);

struct TraceSplit {
  double total = 0.0;
  double even = 0.0;  // Z_e
  double odd = 0.0;   // Z_o = total - even
};

TraceSplit even_path_contribution(const EntryDistribution& dist, int n, int s, bool normalized);

/// E[Tr M^{2s}] as the degree-(s+1) polynomial in n that it is, fitted on
/// n = 1..s+2 by exact enumeration and evaluated at `n`. Divided by n^s when
/// normalized. Needs (s+2)^{2s} under the enumeration guard, so s <= 4.
double exact_expected_trace_interpolated(const EntryDistribution& dist, int n, int s,
                                         bool normalized);

/// Instants j in [1, 2s] whose edge has an odd running count after step j.
std::vector<int> marked_instants(std::span<const int> vertices);
std::vector<int> marked_instants(const ClosedPath& p);

/// Instants of the last occurrence of each odd-multiplicity edge, ascending.
std::vector<int> nonreturned_edges(const ClosedPath& p);
/// Half the number of odd edges.
int odd_pair_count(const ClosedPath& p);
bool is_even_path(const ClosedPath& p);
bool is_even_walk(std::span<const int> vertices);
/// Every edge appears at least twice (the paths with nonzero weight under a
/// centered law).
bool is_contributing(const ClosedPath& p);

/// Replaces each non-returned step (a, b) by (a, n+1), (n+1, b).
ClosedPath fk_lift(const ClosedPath& p);

}  // namespace tml
