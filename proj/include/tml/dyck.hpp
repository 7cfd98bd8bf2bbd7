#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tml {

/// Nonnegative +-1 walk of length 2s from level 0 back to level 0.
class DyckPath {
 public:
  /// Throws std::invalid_argument unless the steps form a Dyck path.
  explicit DyckPath(std::vector<std::int8_t> steps);

  /// Parses "+-+-" / "++--".
  static DyckPath parse(std::string_view text);
  static bool is_valid(std::span<const std::int8_t> steps) noexcept;

  int half_length() const noexcept { return static_cast<int>(steps_.size() / 2); }
  int length() const noexcept { return static_cast<int>(steps_.size()); }
  const std::vector<std::int8_t>& steps() const noexcept { return steps_; }

  /// x(0..2s), x(0) = 0.
  std::vector<int> levels() const;
  int max_level() const;
  std::string to_string() const;

  friend bool operator==(const DyckPath&, const DyckPath&) = default;
  friend auto operator<=>(const DyckPath&, const DyckPath&) = default;

 private:
  std::vector<std::int8_t> steps_;
};

inline constexpr int kMaxEnumerationHalfLength = 14;
inline constexpr int kMaxExactExpectationHalfLength = 12;

/// (2s)! / (s! (s+1)!), exact.
mpz_class catalan(int s);
double catalan_double(int s);
/// log T_{0,2s} via lgamma; usable far beyond double range.
double log_catalan(int s);

/// Calls `visit` for every Dyck path of half-length s in lexicographic order of
/// the step sequence (-1 before +1). Throws std::length_error for s > 14.
void for_each_dyck_path(int s, const std::function<void(const DyckPath&)>& visit);
std::vector<DyckPath> enumerate_dyck(int s);

/// Uniform draw: a shuffled word of s+1 up-steps and s down-steps is rotated
/// to its unique positive cyclic shift, then the leading up-step is dropped.
DyckPath sample_dyck(int s, std::uint64_t seed);

/// Largest r with x(t) >= x(t1) on [t1, t1 + r]; runs to the end of the path
/// when the walk never drops below x(t1) afterwards.
int descent_window(const DyckPath& x, int t1);
/// descent_window for every t1 in 0..2s, in one stack pass.
std::vector<int> descent_windows(const DyckPath& x);

/// K(x) = sum over t1 <= 2s of the number of l2 in [1, 2s - t1] such that the
/// walk stays at or above x(t1) on [t1, t1 + l2]; equals sum_t1 r1(t1).
std::int64_t k_functional(const DyckPath& x);
/// The same quantity evaluated as the literal double sum of indicators.
std::int64_t k_functional_by_windows(const DyckPath& x);

/// Sum over 0 < t1 < ... < tI < 2s of prod_j r1(t_j), by the elementary
/// symmetric polynomial recursion.
mpz_class k_functional_tensor(const DyckPath& x, int order);

/// Number of t1 in [0, s] with x(t) >= x(t1) on [t1, t1 + s].
int stay_above_count(const DyckPath& x);

enum class ExpectationMode { Exact, MonteCarlo };

struct ExpectationResult {
  double value = 0.0;
  double std_error = 0.0;  // 0 in exact mode
  std::size_t samples = 0;
};

/// Exact sum over all paths of K, for fixtures (s <= 12).
mpz_class k_functional_total(int s);
mpz_class stay_above_total(int s);

/// E[K] (order 0) or E[K^{tensor order}] (order >= 1) under the uniform Dyck
/// measure. Exact mode enumerates (s <= 12); Monte Carlo uses
/// sample_dyck(s, derive_seed(seed, i)).
ExpectationResult expected_k_functional(int s, int order, ExpectationMode mode,
                                        std::size_t trials = 0, std::uint64_t seed = 0);

ExpectationResult stay_above_full_window_expectation(int s, ExpectationMode mode,
                                                     std::size_t trials = 0,
                                                     std::uint64_t seed = 0);

/// sum_{k=0}^{I-1} B(3k/2 + 1/2, 3(I-1-k)/2 + 1/2).
double beta_sum(int order);

struct MaxLevelRow {
  int k = 0;
  double probability = 0.0;
  double fitted = 0.0;  // C1 exp(-C2 k^2 / s)
};

struct MaxLevelTail {
  std::vector<MaxLevelRow> rows;  // k = 1..s
  double c1 = 0.0;
  double c2 = 0.0;
  int mode_level = 0;
};

/// Empirical law of max_t x(t); the Gaussian-tail fit uses levels at or
/// beyond the mode with nonzero frequency.
MaxLevelTail max_level_tail(int s, std::size_t trials, std::uint64_t seed);
/// Exact law by enumeration (s <= 14).
MaxLevelTail max_level_distribution_exact(int s);

/// Least-squares slope of log(y) on log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace tml
