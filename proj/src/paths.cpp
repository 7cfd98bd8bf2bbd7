#include "tml/paths.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tml {

namespace {

std::string join(std::span<const int> v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

// Weight of the closed sequence seq[0..2s-1] (seq[2s] == seq[0] implied).
// `edges` is scratch space of size 2s.
struct SequenceWeight {
  double weight;
  bool even;
};

SequenceWeight sequence_weight(const std::vector<int>& seq, std::vector<Edge>& edges,
                               const EntryDistribution& dist) {
  const std::size_t len = seq.size();
  for (std::size_t j = 0; j < len; ++j) edges[j] = Edge::of(seq[j], seq[(j + 1) % len]);
  std::sort(edges.begin(), edges.end());
  double w = 1.0;
  bool even = true;
  std::size_t i = 0;
  while (i < len) {
    std::size_t k = i + 1;
    while (k < len && edges[k] == edges[i]) ++k;
    const int mult = static_cast<int>(k - i);
    even = even && mult % 2 == 0;
    w *= dist.moment(mult);
    i = k;
  }
  return {w, even};
}

// Odometer over the 2s-1 free coordinates with i_0 fixed; calls f(seq).
template <typename F>
void odometer_from(int n, int s, int lead, F&& f) {
  const std::size_t len = 2 * static_cast<std::size_t>(s);
  std::vector<int> seq(len, 1);
  seq[0] = lead;
  while (true) {
    f(seq);
    std::size_t pos = len - 1;
    while (pos >= 1 && seq[pos] == n) {
      seq[pos] = 1;
      --pos;
    }
    if (pos == 0) break;
    ++seq[pos];
  }
}

TraceSplit enumerate_split(const EntryDistribution& dist, int n, int s, bool normalized) {
  check_enumeration_guard(n, s);
  std::vector<double> total(static_cast<std::size_t>(n), 0.0);
  std::vector<double> even(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int lead = 1; lead <= n; ++lead) {
    std::vector<Edge> edges(2 * static_cast<std::size_t>(s));
    double t = 0.0;
    double e = 0.0;
    odometer_from(n, s, lead, [&](const std::vector<int>& seq) {
      const auto w = sequence_weight(seq, edges, dist);
      t += w.weight;
      if (w.even) e += w.weight;
    });
    total[static_cast<std::size_t>(lead) - 1] = t;
    even[static_cast<std::size_t>(lead) - 1] = e;
  }
  TraceSplit split;
  for (int v = 0; v < n; ++v) {
    split.total += total[static_cast<std::size_t>(v)];
    split.even += even[static_cast<std::size_t>(v)];
  }
  if (normalized) {
    const double scale = std::pow(static_cast<double>(n), s);
    split.total /= scale;
    split.even /= scale;
  }
  split.odd = split.total - split.even;
  return split;
}

}  // namespace

std::string Walk::to_string() const { return join(vertices); }

ClosedPath::ClosedPath(std::vector<int> vertices, int n) : vertices_(std::move(vertices)), n_(n) {
  if (vertices_.size() < 3) throw std::invalid_argument("closed path needs length >= 2");
  if ((vertices_.size() - 1) % 2 != 0) throw std::invalid_argument("closed path length must be even");
  if (vertices_.front() != vertices_.back()) throw std::invalid_argument("path is not closed");
  for (int v : vertices_)
    if (v < 1 || v > n_) throw std::invalid_argument("vertex outside [1, n]");
}

ClosedPath ClosedPath::parse(std::string_view text, int n) {
  std::vector<int> vs;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size() && token.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("bad vertex '" + token + "'");
    vs.push_back(v);
  }
  int top = n;
  if (top == 0)
    for (int v : vs) top = std::max(top, v);
  return ClosedPath(std::move(vs), top);
}

std::string ClosedPath::to_string() const { return join(vertices_); }

EdgeCount edge_multiplicities(std::span<const int> vertices) {
  EdgeCount count;
  for (std::size_t j = 1; j < vertices.size(); ++j) ++count[Edge::of(vertices[j - 1], vertices[j])];
  return count;
}

EdgeCount edge_multiplicities(const ClosedPath& p) { return edge_multiplicities(p.vertices()); }

double path_weight(const ClosedPath& p, const EntryDistribution& dist, bool normalized) {
  double w = 1.0;
  for (const auto& [edge, k] : edge_multiplicities(p)) w *= dist.moment(k);
  if (normalized) w /= std::pow(static_cast<double>(p.n()), p.s());
  return w;
}

void check_enumeration_guard(int n, int s) {
  if (n < 1 || s < 1) throw std::invalid_argument("enumeration needs n >= 1 and s >= 1");
  if (2.0 * s * std::log10(static_cast<double>(n)) > std::log10(kEnumerationGuard) + 1e-12)
    throw std::length_error("n^(2s) = " + std::to_string(n) + "^" + std::to_string(2 * s) +
                            " exceeds the enumeration guard 1e8");
}

void for_each_closed_path(int n, int s, const std::function<void(const ClosedPath&)>& visit) {
  check_enumeration_guard(n, s);
  for (int lead = 1; lead <= n; ++lead) {
    odometer_from(n, s, lead, [&](const std::vector<int>& seq) {
      std::vector<int> vs(seq);
      vs.push_back(seq.front());
      visit(ClosedPath(std::move(vs), n));
    });
  }
}

double exact_expected_trace(const EntryDistribution& dist, int n, int s, bool normalized) {
  return enumerate_split(dist, n, s, normalized).total;
}

TraceSplit even_path_contribution(const EntryDistribution& dist, int n, int s, bool normalized) {
  return enumerate_split(dist, n, s, normalized);
}

double exact_expected_trace_interpolated(const EntryDistribution& dist, int n, int s,
                                         bool normalized) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const int points = s + 2;
  check_enumeration_guard(points, s);
  std::vector<mpq_class> y;
  for (int k = 1; k <= points; ++k) y.emplace_back(exact_expected_trace(dist, k, s, false));
  mpq_class value = 0;
  for (int i = 1; i <= points; ++i) {
    mpq_class basis = 1;
    for (int j = 1; j <= points; ++j) {
      if (j == i) continue;
      mpq_class factor(n - j);
      factor /= (i - j);
      basis *= factor;
    }
    value += basis * y[static_cast<std::size_t>(i) - 1];
  }
  double result = value.get_d();
  if (normalized) result /= std::pow(static_cast<double>(n), s);
  return result;
}

std::vector<int> marked_instants(std::span<const int> vertices) {
  std::map<Edge, int> seen;
  std::vector<int> marked;
  for (std::size_t j = 1; j < vertices.size(); ++j)
    if (++seen[Edge::of(vertices[j - 1], vertices[j])] % 2 == 1) marked.push_back(static_cast<int>(j));
  return marked;
}

std::vector<int> marked_instants(const ClosedPath& p) { return marked_instants(p.vertices()); }

std::vector<int> nonreturned_edges(const ClosedPath& p) {
  const auto mult = edge_multiplicities(p);
  std::map<Edge, int> last;
  for (int j = 1; j <= p.length(); ++j) last[p.step(j)] = j;
  std::vector<int> out;
  for (const auto& [edge, k] : mult)
    if (k % 2 == 1) out.push_back(last[edge]);
  std::sort(out.begin(), out.end());
  return out;
}

int odd_pair_count(const ClosedPath& p) { return static_cast<int>(nonreturned_edges(p).size()) / 2; }

bool is_even_walk(std::span<const int> vertices) {
  for (const auto& [edge, k] : edge_multiplicities(vertices))
    if (k % 2 != 0) return false;
  return true;
}

bool is_even_path(const ClosedPath& p) { return is_even_walk(p.vertices()); }

bool is_contributing(const ClosedPath& p) {
  for (const auto& [edge, k] : edge_multiplicities(p))
    if (k < 2) return false;
  return true;
}

ClosedPath fk_lift(const ClosedPath& p) {
  const auto odd = nonreturned_edges(p);
  const int fresh = p.n() + 1;
  std::vector<int> out{p.origin()};
  std::size_t next = 0;
  for (int j = 1; j <= p.length(); ++j) {
    if (next < odd.size() && odd[next] == j) {
      out.push_back(fresh);
      ++next;
    }
    out.push_back(p[static_cast<std::size_t>(j)]);
  }
  return ClosedPath(std::move(out), fresh);
}

}  // namespace tml
