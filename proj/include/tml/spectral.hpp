#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tml/ensemble.hpp"
#include "tml/symmetric_eigen.hpp"

namespace tml {

/// Monte Carlo estimate of E[Tr A^{2s}].
struct TraceEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  int s = 0;
  std::size_t n = 0;
};

struct EdgeExperimentRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double epsilon = 0.0;
  double threshold = 0.0;  // 2 sigma + n^(-6/11 + epsilon)
  double exceed_fraction = 0.0;
  double mean_lambda_max = 0.0;
};

struct ConcentrationRow {
  double t = 0.0;
  double empirical_tail = 0.0;
  double bound = 0.0;  // 4 exp(-t^2/32), unclamped
};

struct ConcentrationResult {
  std::vector<ConcentrationRow> rows;
  /// The centering uses the sample mean of lambda_max in place of E[lambda_max].
  double sample_mean = 0.0;
  double scale = 0.0;  // K * n^(-1/2)
};

enum class TraceRoute { MatrixPower, Eigenvalues };

double largest_eigenvalue(const MatrixSample& m, bool normalized, const EigenOptions& opt = {});
double spectral_norm(const MatrixSample& m, bool normalized, const EigenOptions& opt = {});

/// Tr M^{2s} (or Tr A^{2s}). The matrix-power route forms M^s by binary
/// powering and returns its squared Frobenius norm; the eigenvalue route sums
/// lambda^{2s}. Throws std::overflow_error on a non-finite result.
double trace_power(const MatrixSample& m, int s, bool normalized,
                   TraceRoute route = TraceRoute::MatrixPower);

/// Same for a raw row-major symmetric matrix.
double trace_power(std::span<const double> a, std::size_t n, int s, TraceRoute route);

/// Trials use seeds derive_seed(seed, t). Requires trials >= 2.
TraceEstimate mc_expected_trace(const EntryDistribution& dist, std::size_t n, int s,
                                std::size_t trials, std::uint64_t seed);

/// N * T_{0,2s} * sigma^{2s}, the leading even-path count for the normalized matrix.
double wigner_trace_prediction(std::size_t n, int s, double sigma);
/// N * (2 sigma)^{2s} / (sqrt(pi) s^{3/2}), the large-s form of the same.
double wigner_trace_prediction_asymptotic(std::size_t n, int s, double sigma);

/// min(1, E / threshold^{2s}).
double markov_tail_bound(double expected_trace, int s, double threshold);

/// 2 sigma + n^(-6/11 + epsilon).
double edge_threshold(double sigma, std::size_t n, double epsilon);

/// lambda_max(A_N) for each trial; trial t uses derive_seed(seed, t).
std::vector<double> sample_lambda_max(const EntryDistribution& dist, std::size_t n,
                                      std::size_t trials, std::uint64_t seed,
                                      const EigenOptions& opt = {});

std::vector<EdgeExperimentRow> edge_exceedance_experiment(const EntryDistribution& dist,
                                                          std::span<const std::size_t> n_list,
                                                          std::size_t trials, double epsilon,
                                                          std::uint64_t seed);

/// Empirical P(|lambda_max - mean| >= K t n^{-1/2}) against 4 e^{-t^2/32}.
/// Requires trials >= 100.
ConcentrationResult concentration_experiment(const EntryDistribution& dist, std::size_t n,
                                             std::size_t trials, std::span<const double> t_grid,
                                             std::uint64_t seed);

/// Tail table from precomputed lambda_max samples.
ConcentrationResult concentration_from_samples(std::span<const double> lambda_max, double bound_k,
                                               std::size_t n, std::span<const double> t_grid);

/// Diagnostic histogram of the normalized spectrum over [lo, hi).
std::vector<std::size_t> spectrum_histogram(std::span<const double> eigenvalues, double lo,
                                            double hi, std::size_t bins);

/// Semicircle law mass of each bin for variance sigma^2.
std::vector<double> semicircle_bin_mass(double sigma, double lo, double hi, std::size_t bins);

}  // namespace tml
