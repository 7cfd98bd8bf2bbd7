#include "tml/gluing.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace tml {

namespace {

std::vector<int> reversed_copy(const std::vector<int>& v) { return {v.rbegin(), v.rend()}; }

int entry_vertex(const std::vector<Subpath>& parts, const TrailStep& st) {
  const auto& sp = parts[static_cast<std::size_t>(st.subpath)];
  return st.reversed ? sp.right() : sp.left();
}

int exit_vertex(const std::vector<Subpath>& parts, const TrailStep& st) {
  const auto& sp = parts[static_cast<std::size_t>(st.subpath)];
  return st.reversed ? sp.left() : sp.right();
}

std::vector<int> trail_vertices(const std::vector<Subpath>& parts, const Trail& t) {
  std::vector<int> out{t.origin};
  for (const auto& st : t.steps) {
    const auto& sp = parts[static_cast<std::size_t>(st.subpath)];
    const auto seq = st.reversed ? reversed_copy(sp.vertices) : sp.vertices;
    out.insert(out.end(), seq.begin() + 1, seq.end());
  }
  return out;
}

std::vector<std::pair<EndId, EndId>> trail_pairings(const std::vector<Trail>& trails) {
  std::vector<std::pair<EndId, EndId>> out;
  for (const auto& t : trails) {
    for (std::size_t i = 0; i + 1 < t.steps.size(); ++i)
      out.emplace_back(t.steps[i].exit(), t.steps[i + 1].entry());
    out.emplace_back(t.steps.back().exit(), t.steps.front().entry());
  }
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::map<int, int> endpoint_histogram(const OddStructure& odd) {
  std::map<int, int> occurrences;
  for (const auto& run : odd.intervals) {
    ++occurrences[run.left_vertex];
    ++occurrences[run.right_vertex];
  }
  std::map<int, int> hist;
  for (const auto& [v, count] : occurrences) ++hist[count / 2];
  return hist;
}

// Exhaustive exploration of the gluing procedure's choice points.
class GluingSearch {
 public:
  GluingSearch(const std::vector<Subpath>& parts, int root, std::size_t budget)
      : parts_(parts), root_(root), budget_(budget), glued_(parts.size(), false) {}

  void run() {
    glued_[0] = true;
    Trail t{root_, {{0, false}}};
    advance(t);
  }

  std::size_t distinct() const { return seen_.size(); }
  bool truncated() const { return truncated_; }

 private:
  void advance(Trail& t) {
    if (++nodes_ > budget_) {
      truncated_ = true;
      return;
    }
    const int cur = exit_vertex(parts_, t.steps.back());
    if (cur == t.origin) {
      trails_.push_back(t);
      restart();
      trails_.pop_back();
      return;
    }
    for (std::size_t k = 0; k < parts_.size() && !truncated_; ++k) {
      if (glued_[k]) continue;
      for (bool rev : {false, true}) {
        const TrailStep st{static_cast<int>(k), rev};
        if (entry_vertex(parts_, st) != cur) continue;
        glued_[k] = true;
        t.steps.push_back(st);
        advance(t);
        t.steps.pop_back();
        glued_[k] = false;
      }
    }
  }

  void restart() {
    if (std::all_of(glued_.begin(), glued_.end(), [](bool b) { return b; })) {
      auto pairs = trail_pairings(trails_);
      for (auto& pr : pairs)
        if (pr.first > pr.second) std::swap(pr.first, pr.second);
      std::sort(pairs.begin(), pairs.end());
      seen_.insert(std::move(pairs));
      return;
    }
    bool from_root = false;
    for (std::size_t k = 0; k < parts_.size() && !truncated_; ++k) {
      if (glued_[k]) continue;
      for (bool rev : {false, true}) {
        const TrailStep st{static_cast<int>(k), rev};
        if (entry_vertex(parts_, st) != root_) continue;
        from_root = true;
        glued_[k] = true;
        Trail t{root_, {st}};
        advance(t);
        glued_[k] = false;
      }
    }
    if (from_root) return;
    const auto k = static_cast<std::size_t>(std::find(glued_.begin(), glued_.end(), false) - glued_.begin());
    glued_[k] = true;
    Trail t{parts_[k].left(), {{static_cast<int>(k), false}}};
    advance(t);
    glued_[k] = false;
  }

  const std::vector<Subpath>& parts_;
  int root_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool truncated_ = false;
  std::vector<bool> glued_;
  std::vector<Trail> trails_;
  std::set<std::vector<std::pair<EndId, EndId>>> seen_;
};

}  // namespace

char case_label(GluingCase c) noexcept {
  switch (c) {
    case GluingCase::A:
      return 'A';
    case GluingCase::B:
      return 'B';
    case GluingCase::C:
      return 'C';
  }
  return '?';
}

OddStructure odd_interval_decomposition(const ClosedPath& p) {
  const auto instants = nonreturned_edges(p);
  if (instants.empty()) throw std::domain_error("even path has no odd edges");
  OddStructure out;
  out.l = static_cast<int>(instants.size()) / 2;
  std::size_t i = 0;
  while (i < instants.size()) {
    std::size_t k = i;
    while (k + 1 < instants.size() && instants[k + 1] == instants[k] + 1) ++k;
    OddInterval run;
    run.first = instants[i];
    run.last = instants[k];
    run.left_vertex = p[static_cast<std::size_t>(run.first) - 1];
    run.right_vertex = p[static_cast<std::size_t>(run.last)];
    out.intervals.push_back(run);
    i = k + 1;
  }
  out.J = static_cast<int>(out.intervals.size());
  return out;
}

std::vector<Subpath> split_subpaths(const ClosedPath& p, const OddStructure& odd) {
  std::vector<Subpath> parts;
  const int J = odd.J;
  for (int k = 0; k <= J; ++k) {
    Subpath sp;
    sp.index = k;
    sp.start = k == 0 ? 0 : odd.intervals[static_cast<std::size_t>(k) - 1].last;
    sp.end = k == J ? p.length() : odd.intervals[static_cast<std::size_t>(k)].first - 1;
    sp.vertices.assign(p.vertices().begin() + sp.start, p.vertices().begin() + sp.end + 1);
    parts.push_back(std::move(sp));
  }
  return parts;
}

GluedDecomposition glue(const ClosedPath& p) {
  GluedDecomposition g;
  const int root = p.origin();
  if (is_even_path(p)) {
    g.w_paths = {p.walk()};
    g.origins = {root};
    g.I = 1;
    g.gluing_case = GluingCase::A;
    g.total_length = p.length();
    g.trails = {Trail{root, {{0, false}}}};
    return g;
  }

  const auto odd = odd_interval_decomposition(p);
  const auto parts = split_subpaths(p, odd);
  g.l = odd.l;
  g.J = odd.J;

  std::vector<bool> glued(parts.size(), false);
  std::size_t remaining = parts.size();
  auto take = [&](std::size_t k) {
    glued[k] = true;
    --remaining;
  };
  // Lowest-index unglued subpath with an end at v, oriented to start there.
  auto find_at = [&](int v) -> std::optional<TrailStep> {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (glued[k]) continue;
      if (parts[k].left() == v) return TrailStep{static_cast<int>(k), false};
      if (parts[k].right() == v) return TrailStep{static_cast<int>(k), true};
    }
    return std::nullopt;
  };

  Trail current{root, {{0, false}}};
  take(0);
  while (true) {
    int cur = exit_vertex(parts, current.steps.back());
    while (cur != current.origin) {
      const auto next = find_at(cur);
      if (!next) throw std::logic_error("gluing stuck at vertex " + std::to_string(cur));
      take(static_cast<std::size_t>(next->subpath));
      current.steps.push_back(*next);
      cur = exit_vertex(parts, *next);
    }
    g.trails.push_back(current);
    if (remaining == 0) break;
    if (const auto at_root = find_at(root)) {
      current = Trail{root, {*at_root}};
      take(static_cast<std::size_t>(at_root->subpath));
    } else {
      const auto k = static_cast<std::size_t>(std::find(glued.begin(), glued.end(), false) - glued.begin());
      current = Trail{parts[k].left(), {{static_cast<int>(k), false}}};
      take(k);
    }
  }
  g.pairings = trail_pairings(g.trails);

  // Group non-empty trails by origin, in order of first appearance; W_0 is
  // rooted at i_0 even when every trail there is empty.
  g.origins = {root};
  g.w_paths = {Walk{{root}}};
  for (const auto& t : g.trails) {
    const auto vs = trail_vertices(parts, t);
    if (vs.size() < 2) continue;
    auto it = std::find(g.origins.begin(), g.origins.end(), t.origin);
    std::size_t idx = static_cast<std::size_t>(it - g.origins.begin());
    if (it == g.origins.end()) {
      g.origins.push_back(t.origin);
      g.w_paths.push_back(Walk{{t.origin}});
    }
    auto& w = g.w_paths[idx].vertices;
    w.insert(w.end(), vs.begin() + 1, vs.end());
  }
  g.I = static_cast<int>(g.w_paths.size());
  g.total_length = 0;
  bool all_even = true;
  for (const auto& w : g.w_paths) {
    g.total_length += w.length();
    all_even = all_even && is_even_walk(w.vertices);
  }
  g.gluing_case = g.I == 1 ? GluingCase::A : (all_even ? GluingCase::B : GluingCase::C);
  return g;
}

GluingCount count_gluings(const ClosedPath& p, std::size_t node_budget) {
  const auto odd = odd_interval_decomposition(p);
  const auto parts = split_subpaths(p, odd);
  GluingSearch search(parts, p.origin(), node_budget);
  search.run();
  GluingCount out;
  out.count = search.distinct();
  out.truncated = search.truncated();
  out.e_hist = endpoint_histogram(odd);
  return out;
}

double gluing_factorial_product(const std::map<int, int>& e_hist) {
  double prod = 1.0;
  for (const auto& [i, count] : e_hist) {
    double fact = 1.0;
    for (int k = 2; k <= i; ++k) fact *= k;
    for (int c = 0; c < count; ++c) prod *= fact;
  }
  return prod;
}

double gluing_pairing_product(const std::map<int, int>& e_hist) {
  double prod = 1.0;
  for (const auto& [i, count] : e_hist) {
    double dfact = 1.0;
    for (int k = 2 * i - 1; k > 1; k -= 2) dfact *= k;
    for (int c = 0; c < count; ++c) prod *= dfact;
  }
  return prod;
}

CycleDecomposition cycle_decomposition(const ClosedPath& p) {
  if (is_even_path(p)) return {};
  return cycle_decomposition(p, glue(p));
}

CycleDecomposition cycle_decomposition(const ClosedPath& p, const GluedDecomposition& g) {
  CycleDecomposition out;
  if (g.l == 0) return out;
  const auto odd = odd_interval_decomposition(p);
  const int J = odd.J;
  UnionFind uf(2 * static_cast<std::size_t>(J) + 2);
  for (const auto& [a, b] : g.pairings) uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  uf.unite(static_cast<std::size_t>(left_end(0)), static_cast<std::size_t>(right_end(J)));
  for (int k = 1; k <= J; ++k)
    uf.unite(static_cast<std::size_t>(right_end(k - 1)), static_cast<std::size_t>(left_end(k)));

  std::map<std::size_t, std::size_t> cycle_of;
  for (int k = 1; k <= J; ++k) {
    const auto root = uf.find(static_cast<std::size_t>(left_end(k)));
    auto [it, inserted] = cycle_of.try_emplace(root, out.cycles.size());
    if (inserted) out.cycles.emplace_back();
    auto& cyc = out.cycles[it->second];
    cyc.runs.push_back(k - 1);
    const auto& run = odd.intervals[static_cast<std::size_t>(k) - 1];
    for (int j = run.first; j <= run.last; ++j) cyc.edges.push_back(p.step(j));
  }
  out.c = static_cast<int>(out.cycles.size());
  for (const auto& cyc : out.cycles) ++out.sizes[static_cast<int>(cyc.edges.size())];
  return out;
}

SecondGluingResult second_gluing(std::span<const Walk> w_paths) {
  std::vector<std::vector<int>> paths;
  EdgeCount total;
  for (const auto& w : w_paths) {
    if (w.vertices.empty() || w.vertices.front() != w.vertices.back())
      throw std::invalid_argument("second gluing needs closed walks");
    paths.push_back(w.vertices);
    for (const auto& [e, k] : edge_multiplicities(w.vertices)) total[e] += k;
  }
  for (const auto& [e, k] : total)
    if (k % 2 != 0) throw std::domain_error("union of walks has an odd edge");

  SecondGluingResult out;
  auto first_odd_step = [](const std::vector<int>& w) -> int {
    const auto mult = edge_multiplicities(w);
    for (std::size_t j = 1; j < w.size(); ++j)
      if (mult.at(Edge::of(w[j - 1], w[j])) % 2 == 1) return static_cast<int>(j);
    return 0;
  };
  auto slice = [](const std::vector<int>& w, int from, int to) {
    // Vertices of steps from..to, i.e. w[from-1..to].
    return std::vector<int>(w.begin() + from - 1, w.begin() + to + 1);
  };
  auto append = [](std::vector<int>& dst, const std::vector<int>& seq) {
    if (seq.empty()) return;
    dst.insert(dst.end(), seq.begin() + 1, seq.end());
  };

  while (true) {
    std::size_t ti = paths.size();
    int t = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      t = first_odd_step(paths[i]);
      if (t > 0) {
        ti = i;
        break;
      }
    }
    if (ti == paths.size()) break;
    const auto& wi = paths[ti];
    const int a = wi[static_cast<std::size_t>(t) - 1];
    const int b = wi[static_cast<std::size_t>(t)];
    const Edge e = Edge::of(a, b);

    std::size_t tj = paths.size();
    int tp = 0;
    for (std::size_t j = ti + 1; j < paths.size() && tj == paths.size(); ++j) {
      const auto mult = edge_multiplicities(paths[j]);
      const auto it = mult.find(e);
      if (it == mult.end() || it->second % 2 == 0) continue;
      tj = j;
      for (std::size_t k = 1; k < paths[j].size(); ++k) {
        if (Edge::of(paths[j][k - 1], paths[j][k]) == e) {
          tp = static_cast<int>(k);
          break;
        }
      }
    }
    if (tj == paths.size()) throw std::logic_error("odd edge has no partner walk");
    const auto& wj = paths[tj];
    const int c = wj[static_cast<std::size_t>(tp) - 1];
    const int li = static_cast<int>(wi.size()) - 1;
    const int lj = static_cast<int>(wj.size()) - 1;
    const bool same_direction = !e.is_loop() && c == a;

    std::vector<int> merged{wi.front()};
    append(merged, slice(wi, 1, t - 1));
    if (!same_direction) {
      append(merged, slice(wj, tp + 1, lj));
      append(merged, slice(wj, 1, tp - 1));
    } else {
      append(merged, reversed_copy(slice(wj, 1, tp - 1)));
      append(merged, reversed_copy(slice(wj, tp + 1, lj)));
    }
    append(merged, slice(wi, t + 1, li));
    paths[ti] = std::move(merged);
    paths.erase(paths.begin() + static_cast<std::ptrdiff_t>(tj));
    ++out.merges;
  }
  for (auto& v : paths) out.d_paths.push_back(Walk{std::move(v)});
  return out;
}

PathStatistics path_statistics(std::span<const Walk> walks) {
  PathStatistics st;
  if (walks.empty()) return st;
  struct Step {
    int from;
    int to;
    Edge edge;
    bool marked;
  };
  std::vector<Step> steps;
  std::map<Edge, int> running;
  for (const auto& w : walks) {
    for (std::size_t j = 1; j < w.vertices.size(); ++j) {
      const Edge e = Edge::of(w.vertices[j - 1], w.vertices[j]);
      steps.push_back({w.vertices[j - 1], w.vertices[j], e, ++running[e] % 2 == 1});
    }
  }

  std::map<int, int> arrivals;
  std::map<int, std::vector<std::size_t>> arrival_steps;
  arrivals[walks.front().origin()] = 1;
  for (std::size_t g = 0; g < steps.size(); ++g) {
    if (!steps[g].marked) continue;
    ++arrivals[steps[g].to];
    arrival_steps[steps[g].to].push_back(g);
  }
  for (const auto& [v, k] : arrivals) {
    if (k < 2) continue;
    ++st.n_k[k];
    ++st.self_intersections;
    if (k > 2) st.kappa += k;
    if (k != 2) continue;
    const std::size_t second = arrival_steps[v].back();
    for (std::size_t g = second + 1; g < steps.size(); ++g) {
      if (steps[g].from != v) continue;
      if (steps[g].marked || steps[g].edge != steps[second].edge) ++st.r;
      break;
    }
  }
  st.kappa += st.r;

  std::map<int, std::set<int>> neighbours;
  for (const auto& s : steps) {
    neighbours[s.from].insert(s.to);
    neighbours[s.to].insert(s.from);
  }
  for (const auto& [v, nb] : neighbours) {
    st.nu[v] = static_cast<int>(nb.size());
    st.nu_max = std::max(st.nu_max, st.nu[v]);
  }
  for (const auto& [v, nb] : neighbours) {
    int m = 0;
    for (int u : nb) m += st.nu[u];
    st.M[v] = m;
  }
  return st;
}

PathStatistics path_statistics(const ClosedPath& p_even) {
  const Walk w = p_even.walk();
  return path_statistics(std::span<const Walk>(&w, 1));
}

std::vector<ClosedPath> insertion_enumerate(const ClosedPath& p_prime, int l_max) {
  if (!is_even_path(p_prime)) throw std::invalid_argument("insertion needs an even path");
  if (p_prime.length() > 8 || p_prime.n() > 4)
    throw std::length_error("insertion enumeration is limited to length <= 8 and n <= 4");
  if (l_max < 0) throw std::invalid_argument("l_max must be nonnegative");

  std::vector<ClosedPath> out{p_prime};
  const auto base = edge_multiplicities(p_prime);
  std::vector<Edge> edges;
  for (const auto& [e, k] : base) edges.push_back(e);
  const int E = static_cast<int>(edges.size());

  for (int l = 1; l <= l_max && 2 * l <= E; ++l) {
    std::vector<int> pick(static_cast<std::size_t>(2 * l));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::map<Edge, int> remaining(base.begin(), base.end());
      for (int idx : pick) ++remaining[edges[static_cast<std::size_t>(idx)]];
      const int total = p_prime.length() + 2 * l;
      std::vector<int> walk{p_prime.origin()};
      // Depth-first over next vertices in increasing order.
      auto dfs = [&](auto&& self) -> void {
        if (static_cast<int>(walk.size()) - 1 == total) {
          if (walk.back() == walk.front()) out.emplace_back(walk, p_prime.n());
          return;
        }
        const int cur = walk.back();
        for (auto& [e, k] : remaining) {
          if (k == 0 || (e.u != cur && e.v != cur)) continue;
          const int next = e.u == cur ? e.v : e.u;
          --k;
          walk.push_back(next);
          self(self);
          walk.pop_back();
          ++k;
        }
      };
      dfs(dfs);

      int pos = 2 * l - 1;
      while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == E - 2 * l + pos) --pos;
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < 2 * l; ++q) pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q) - 1] + 1;
    }
  }
  std::sort(out.begin() + 1, out.end(), [](const ClosedPath& x, const ClosedPath& y) {
    return x.vertices() < y.vertices();
  });
  return out;
}

}  // namespace tml
