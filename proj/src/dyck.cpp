#include "tml/dyck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tml/rng.hpp"

namespace tml {

namespace {

void check_half_length(int s) {
  if (s < 1) throw std::invalid_argument("Dyck half-length must be at least 1");
}

void check_enumerable(int s, int limit) {
  check_half_length(s);
  if (s > limit)
    throw std::length_error("half-length " + std::to_string(s) + " exceeds enumeration guard " +
                            std::to_string(limit));
}

ExpectationResult summarize(const std::vector<double>& values) {
  ExpectationResult r;
  r.samples = values.size();
  if (values.empty()) return r;
  double sum = 0.0;
  for (double v : values) sum += v;
  r.value = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - r.value) * (v - r.value);
    r.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1) /
                            static_cast<double>(values.size()));
  }
  return r;
}

template <typename F>
ExpectationResult monte_carlo(int s, std::size_t trials, std::uint64_t seed, F&& f) {
  if (trials < 1) throw std::invalid_argument("Monte Carlo mode needs trials >= 1");
  std::vector<double> values(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto path = sample_dyck(s, derive_seed(seed, static_cast<std::uint64_t>(i)));
    values[static_cast<std::size_t>(i)] = f(path);
  }
  return summarize(values);
}

void fit_tail(MaxLevelTail& tail, int s) {
  int mode = 0;
  double best = -1.0;
  for (const auto& row : tail.rows) {
    if (row.probability > best) {
      best = row.probability;
      mode = row.k;
    }
  }
  tail.mode_level = mode;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : tail.rows) {
    if (row.k < mode || row.probability <= 0.0) continue;
    xs.push_back(static_cast<double>(row.k) * row.k / s);
    ys.push_back(std::log(row.probability));
  }
  if (xs.size() < 2) {
    tail.c1 = best;
    tail.c2 = 0.0;
  } else {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    tail.c2 = -slope;
    tail.c1 = std::exp(my - slope * mx);
  }
  for (auto& row : tail.rows)
    row.fitted = tail.c1 * std::exp(-tail.c2 * static_cast<double>(row.k) * row.k / s);
}

MaxLevelTail tail_from_counts(const std::vector<double>& counts, double total, int s) {
  MaxLevelTail tail;
  for (int k = 1; k <= s; ++k)
    tail.rows.push_back({k, counts[static_cast<std::size_t>(k)] / total, 0.0});
  fit_tail(tail, s);
  return tail;
}

}  // namespace

DyckPath::DyckPath(std::vector<std::int8_t> steps) : steps_(std::move(steps)) {
  if (!is_valid(steps_)) throw std::invalid_argument("step sequence is not a Dyck path");
}

bool DyckPath::is_valid(std::span<const std::int8_t> steps) noexcept {
  if (steps.empty() || steps.size() % 2 != 0) return false;
  int level = 0;
  for (auto step : steps) {
    if (step != 1 && step != -1) return false;
    level += step;
    if (level < 0) return false;
  }
  return level == 0;
}

DyckPath DyckPath::parse(std::string_view text) {
  std::vector<std::int8_t> steps;
  steps.reserve(text.size());
  for (char c : text) {
    if (c == '+' || c == 'U' || c == 'u') {
      steps.push_back(1);
    } else if (c == '-' || c == 'D' || c == 'd') {
      steps.push_back(-1);
    } else {
      throw std::invalid_argument(std::string("bad Dyck step character '") + c + "'");
    }
  }
  return DyckPath(std::move(steps));
}

std::vector<int> DyckPath::levels() const {
  std::vector<int> x(steps_.size() + 1, 0);
  for (std::size_t t = 0; t < steps_.size(); ++t) x[t + 1] = x[t] + steps_[t];
  return x;
}

int DyckPath::max_level() const {
  int level = 0;
  int best = 0;
  for (auto step : steps_) best = std::max(best, level += step);
  return best;
}

std::string DyckPath::to_string() const {
  std::string out;
  out.reserve(steps_.size());
  for (auto step : steps_) out.push_back(step > 0 ? '+' : '-');
  return out;
}

mpz_class catalan(int s) {
  if (s < 0) throw std::invalid_argument("Catalan index must be nonnegative");
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2u * static_cast<unsigned>(s), static_cast<unsigned>(s));
  return binom / (s + 1);
}

double log_catalan(int s) {
  if (s < 0) throw std::invalid_argument("Catalan index must be nonnegative");
  return std::lgamma(2.0 * s + 1.0) - std::lgamma(s + 1.0) - std::lgamma(s + 2.0);
}

double catalan_double(int s) {
  if (s <= 500) return catalan(s).get_d();
  return std::exp(log_catalan(s));
}

void for_each_dyck_path(int s, const std::function<void(const DyckPath&)>& visit) {
  check_enumerable(s, kMaxEnumerationHalfLength);
  const int len = 2 * s;
  std::vector<std::int8_t> steps(static_cast<std::size_t>(len), 0);
  // Explicit backtracking: choice[i] = 0 means -1 tried next, 1 means +1, 2 exhausted.
  std::vector<int> choice(static_cast<std::size_t>(len) + 1, 0);
  std::vector<int> level(static_cast<std::size_t>(len) + 1, 0);
  int i = 0;
  while (i >= 0) {
    if (i == len) {
      visit(DyckPath(steps));
      --i;
      continue;
    }
    auto& c = choice[static_cast<std::size_t>(i)];
    const int h = level[static_cast<std::size_t>(i)];
    const int remaining = len - i;
    bool advanced = false;
    while (c < 2 && !advanced) {
      const int step = c == 0 ? -1 : 1;
      ++c;
      const int next = h + step;
      if (next < 0 || next > remaining - 1) continue;
      steps[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(step);
      level[static_cast<std::size_t>(i) + 1] = next;
      choice[static_cast<std::size_t>(i) + 1] = 0;
      advanced = true;
    }
    if (advanced) {
      ++i;
    } else {
      --i;
    }
  }
}

std::vector<DyckPath> enumerate_dyck(int s) {
  std::vector<DyckPath> out;
  for_each_dyck_path(s, [&](const DyckPath& p) { out.push_back(p); });
  return out;
}

DyckPath sample_dyck(int s, std::uint64_t seed) {
  check_half_length(s);
  const std::size_t len = 2 * static_cast<std::size_t>(s) + 1;
  std::vector<std::int8_t> word(len, -1);
  std::fill(word.begin(), word.begin() + s + 1, static_cast<std::int8_t>(1));
  CounterRng rng(seed);
  for (std::size_t i = len - 1; i > 0; --i) std::swap(word[i], word[rng.below(i + 1)]);

  // The rotation starting just after the last minimum of the prefix sums is
  // the only one whose partial sums stay positive.
  int sum = 0;
  int min_sum = 0;
  std::size_t start = 0;
  for (std::size_t t = 0; t < len; ++t) {
    if (sum <= min_sum) {
      min_sum = sum;
      start = t;
    }
    sum += word[t];
  }
  std::vector<std::int8_t> steps;
  steps.reserve(len - 1);
  for (std::size_t k = 1; k < len; ++k) steps.push_back(word[(start + k) % len]);
  return DyckPath(std::move(steps));
}

std::vector<int> descent_windows(const DyckPath& x) {
  const auto lv = x.levels();
  const int len = x.length();
  std::vector<int> r(lv.size(), 0);
  std::vector<int> stack;
  for (int t = len; t >= 0; --t) {
    while (!stack.empty() && lv[static_cast<std::size_t>(stack.back())] >= lv[static_cast<std::size_t>(t)])
      stack.pop_back();
    const int drop = stack.empty() ? len + 1 : stack.back();
    r[static_cast<std::size_t>(t)] = drop - 1 - t;
    stack.push_back(t);
  }
  return r;
}

int descent_window(const DyckPath& x, int t1) {
  if (t1 < 0 || t1 > x.length()) throw std::out_of_range("instant outside the path");
  const auto lv = x.levels();
  int t = t1;
  while (t + 1 <= x.length() && lv[static_cast<std::size_t>(t) + 1] >= lv[static_cast<std::size_t>(t1)]) ++t;
  return t - t1;
}

std::int64_t k_functional(const DyckPath& x) {
  std::int64_t sum = 0;
  for (int r : descent_windows(x)) sum += r;
  return sum;
}

std::int64_t k_functional_by_windows(const DyckPath& x) {
  const auto lv = x.levels();
  const int len = x.length();
  std::int64_t sum = 0;
  for (int t1 = 0; t1 <= len; ++t1) {
    for (int l2 = 1; l2 <= len - t1; ++l2) {
      bool above = true;
      for (int t = t1; t <= t1 + l2 && above; ++t)
        above = lv[static_cast<std::size_t>(t)] >= lv[static_cast<std::size_t>(t1)];
      if (above) ++sum;
    }
  }
  return sum;
}

mpz_class k_functional_tensor(const DyckPath& x, int order) {
  if (order < 1) throw std::invalid_argument("tensor order must be at least 1");
  const auto r = descent_windows(x);
  std::vector<mpz_class> e(static_cast<std::size_t>(order) + 1, 0);
  e[0] = 1;
  for (std::size_t t = 1; t < r.size(); ++t) {
    const int top = std::min<int>(order, static_cast<int>(t));
    for (int j = top; j >= 1; --j) e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j) - 1] * r[t];
  }
  return e[static_cast<std::size_t>(order)];
}

int stay_above_count(const DyckPath& x) {
  const int s = x.half_length();
  const auto r = descent_windows(x);
  int count = 0;
  for (int t1 = 0; t1 <= s; ++t1) count += r[static_cast<std::size_t>(t1)] >= s ? 1 : 0;
  return count;
}

mpz_class k_functional_total(int s) {
  check_enumerable(s, kMaxExactExpectationHalfLength);
  mpz_class total = 0;
  for_each_dyck_path(s, [&](const DyckPath& p) { total += static_cast<long>(k_functional(p)); });
  return total;
}

mpz_class stay_above_total(int s) {
  check_enumerable(s, kMaxExactExpectationHalfLength);
  mpz_class total = 0;
  for_each_dyck_path(s, [&](const DyckPath& p) { total += stay_above_count(p); });
  return total;
}

ExpectationResult expected_k_functional(int s, int order, ExpectationMode mode, std::size_t trials,
                                        std::uint64_t seed) {
  check_half_length(s);
  if (order < 0) throw std::invalid_argument("tensor order must be nonnegative");
  if (mode == ExpectationMode::Exact) {
    check_enumerable(s, kMaxExactExpectationHalfLength);
    mpz_class total = 0;
    if (order == 0) {
      total = k_functional_total(s);
    } else {
      for_each_dyck_path(s, [&](const DyckPath& p) { total += k_functional_tensor(p, order); });
    }
    const mpq_class mean(total, catalan(s));
    ExpectationResult r;
    r.value = mean.get_d();
    r.samples = catalan(s).get_ui();
    return r;
  }
  return monte_carlo(s, trials, seed, [order](const DyckPath& p) {
    return order == 0 ? static_cast<double>(k_functional(p)) : k_functional_tensor(p, order).get_d();
  });
}

ExpectationResult stay_above_full_window_expectation(int s, ExpectationMode mode,
                                                     std::size_t trials, std::uint64_t seed) {
  check_half_length(s);
  if (mode == ExpectationMode::Exact) {
    const mpq_class mean(stay_above_total(s), catalan(s));
    ExpectationResult r;
    r.value = mean.get_d();
    r.samples = catalan(s).get_ui();
    return r;
  }
  return monte_carlo(s, trials, seed,
                     [](const DyckPath& p) { return static_cast<double>(stay_above_count(p)); });
}

double beta_sum(int order) {
  if (order < 1) throw std::invalid_argument("beta_sum needs I >= 1");
  double sum = 0.0;
  for (int k = 0; k < order; ++k) {
    const double a = 1.5 * k + 0.5;
    const double b = 1.5 * (order - 1 - k) + 0.5;
    sum += std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  }
  return sum;
}

MaxLevelTail max_level_tail(int s, std::size_t trials, std::uint64_t seed) {
  check_half_length(s);
  if (trials < 1) throw std::invalid_argument("max_level_tail needs trials >= 1");
  std::vector<int> levels(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    levels[static_cast<std::size_t>(i)] =
        sample_dyck(s, derive_seed(seed, static_cast<std::uint64_t>(i))).max_level();
  std::vector<double> counts(static_cast<std::size_t>(s) + 1, 0.0);
  for (int k : levels) counts[static_cast<std::size_t>(k)] += 1.0;
  return tail_from_counts(counts, static_cast<double>(trials), s);
}

MaxLevelTail max_level_distribution_exact(int s) {
  check_enumerable(s, kMaxEnumerationHalfLength);
  std::vector<double> counts(static_cast<std::size_t>(s) + 1, 0.0);
  double total = 0.0;
  for_each_dyck_path(s, [&](const DyckPath& p) {
    counts[static_cast<std::size_t>(p.max_level())] += 1.0;
    total += 1.0;
  });
  return tail_from_counts(counts, total, s);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace tml
