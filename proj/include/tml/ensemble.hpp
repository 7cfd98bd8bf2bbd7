#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tml {

/// Highest moment order held in the cache; exact trace computations need
/// moments up to the path length 2s, so this caps 2s at 64.
inline constexpr int kMomentCacheDepth = 64;

/// Finite, centered, discrete law for the matrix entries.
///
/// Immutable once built. sigma() is the standard deviation, mu3() the third
/// moment and bound_k() the largest |x| on the support, which dominates every
/// absolute moment: E|x|^k <= K^k.
class EntryDistribution {
 public:
  const std::vector<double>& support() const noexcept { return support_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }

  double sigma() const noexcept { return sigma_; }
  double variance() const noexcept { return sigma_ * sigma_; }
  double mu3() const noexcept { return moments_[3]; }
  double bound_k() const noexcept { return bound_k_; }

  /// Sum of p_i x_i^k. Orders up to kMomentCacheDepth come from the cache.
  double moment(int k) const;

  /// Inverse-CDF draw from a uniform variate in [0, 1).
  double quantile(double u) const noexcept;

  /// Canonical text form, parseable by parse_distribution.
  std::string describe() const;

  /// Preset name when built from one ("rademacher", "skew12"), else empty.
  const std::string& name() const noexcept { return name_; }

 private:
  friend EntryDistribution make_distribution(std::span<const double>, std::span<const double>);
  friend EntryDistribution named_distribution(std::string_view);

  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  std::vector<double> moments_;  // orders 0..kMomentCacheDepth
  double sigma_ = 0.0;
  double bound_k_ = 0.0;
  std::string name_;
};

/// Validates and builds a distribution. Throws std::invalid_argument when the
/// lists differ in length or have fewer than two atoms, a probability is not
/// in (0, 1], the probabilities do not sum to 1 (1e-12), the mean is not 0
/// (1e-12), or the variance vanishes.
EntryDistribution make_distribution(std::span<const double> support,
                                    std::span<const double> probabilities);

/// Presets: "rademacher" (+-1 w.p. 1/2) and "skew12" (-1 w.p. 2/3, 2 w.p. 1/3).
EntryDistribution named_distribution(std::string_view name);

/// Parses a preset name or "support=a,b,...;probs=p,q,...". Probabilities may
/// be written as decimals or exact fractions ("2/3").
EntryDistribution parse_distribution(std::string_view token);

/// One draw of the unnormalized symmetric matrix M_N; A_N = M_N / sqrt(N).
struct MatrixSample {
  std::size_t n = 0;
  std::vector<double> entries;  // row-major n*n, symmetric
  std::uint64_t seed = 0;

  double operator()(std::size_t i, std::size_t j) const noexcept { return entries[i * n + j]; }
  double normalized(std::size_t i, std::size_t j) const noexcept;
  std::vector<double> normalized_entries() const;
};

/// Upper-triangle entries (diagonal included) are i.i.d. draws; entry (i, j),
/// i <= j, uses counter i*n + j of the seed's stream, so the result does not
/// depend on how rows are split across threads.
MatrixSample sample_symmetric_matrix(const EntryDistribution& dist, std::size_t n,
                                     std::uint64_t seed);

/// Fills only the upper triangle, mirrored; exposed for the benchmark.
void fill_symmetric(const EntryDistribution& dist, std::size_t n, std::uint64_t seed,
                    std::span<double> out);

}  // namespace tml
