#include "tml/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tml/dyck.hpp"
#include "tml/rng.hpp"

namespace tml {

namespace {

std::vector<double> view_entries(const MatrixSample& m, bool normalized) {
  return normalized ? m.normalized_entries() : m.entries;
}

// c = a * b for dense row-major n x n matrices.
void multiply(const std::vector<double>& a, const std::vector<double>& b, std::vector<double>& c,
              std::size_t n) {
  c.assign(n * n, 0.0);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto i = static_cast<std::size_t>(r);
    double* out = &c[i * n];
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      const double* brow = &b[k * n];
#pragma omp simd
      for (std::size_t j = 0; j < n; ++j) out[j] += aik * brow[j];
    }
  }
}

double semicircle_cdf(double x, double sigma) {
  const double r = 2.0 * sigma;
  if (x <= -r) return 0.0;
  if (x >= r) return 1.0;
  return 0.5 + x * std::sqrt(r * r - x * x) / (std::numbers::pi * r * r) +
         std::asin(x / r) / std::numbers::pi;
}

}  // namespace

double largest_eigenvalue(const MatrixSample& m, bool normalized, const EigenOptions& opt) {
  if (m.n == 0) throw std::invalid_argument("empty matrix");
  const auto ev = symmetric_eigenvalues(view_entries(m, normalized), m.n, opt);
  return ev.back();
}

double spectral_norm(const MatrixSample& m, bool normalized, const EigenOptions& opt) {
  if (m.n == 0) throw std::invalid_argument("empty matrix");
  const auto ev = symmetric_eigenvalues(view_entries(m, normalized), m.n, opt);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double trace_power(std::span<const double> a, std::size_t n, int s, TraceRoute route) {
  if (s < 1) throw std::invalid_argument("trace_power needs s >= 1");
  if (a.size() != n * n) throw std::invalid_argument("matrix span has wrong size");
  double result = 0.0;
  if (route == TraceRoute::Eigenvalues) {
    for (double lambda : symmetric_eigenvalues(a, n)) result += std::pow(lambda, 2 * s);
  } else {
    std::vector<double> base(a.begin(), a.end());
    std::vector<double> acc;
    std::vector<double> tmp;
    bool have_acc = false;
    for (int e = s; e > 0; e >>= 1) {
      if (e & 1) {
        if (have_acc) {
          multiply(acc, base, tmp, n);
          std::swap(acc, tmp);
        } else {
          acc = base;
          have_acc = true;
        }
      }
      if (e > 1) {
        multiply(base, base, tmp, n);
        std::swap(base, tmp);
      }
    }
    // M^s is symmetric, so Tr M^{2s} is its squared Frobenius norm.
    for (double x : acc) result += x * x;
  }
  if (!std::isfinite(result)) throw std::overflow_error("trace power is not finite");
  return result;
}

double trace_power(const MatrixSample& m, int s, bool normalized, TraceRoute route) {
  return trace_power(view_entries(m, normalized), m.n, s, route);
}

TraceEstimate mc_expected_trace(const EntryDistribution& dist, std::size_t n, int s,
                                std::size_t trials, std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("mc_expected_trace needs trials >= 2");
  if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
  std::vector<double> values(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel
  {
    std::vector<double> a(n * n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
      fill_symmetric(dist, n, derive_seed(seed, static_cast<std::uint64_t>(t)), a);
      const double scale = 1.0 / std::sqrt(static_cast<double>(n));
      std::vector<double> normalized(a);
      for (double& x : normalized) x *= scale;
      values[static_cast<std::size_t>(t)] = trace_power(normalized, n, s, TraceRoute::MatrixPower);
    }
  }
  TraceEstimate est;
  est.trials = trials;
  est.s = s;
  est.n = n;
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double v : values) ss += (v - est.mean) * (v - est.mean);
  est.std_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  return est;
}

double wigner_trace_prediction(std::size_t n, int s, double sigma) {
  if (s < 1) throw std::invalid_argument("wigner_trace_prediction needs s >= 1");
  return std::exp(std::log(static_cast<double>(n)) + log_catalan(s) + 2.0 * s * std::log(sigma));
}

double wigner_trace_prediction_asymptotic(std::size_t n, int s, double sigma) {
  if (s < 1) throw std::invalid_argument("wigner_trace_prediction needs s >= 1");
  return static_cast<double>(n) * std::pow(2.0 * sigma, 2 * s) /
         (std::sqrt(std::numbers::pi) * std::pow(static_cast<double>(s), 1.5));
}

double markov_tail_bound(double expected_trace, int s, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (expected_trace <= 0.0) return 0.0;
  const double log_ratio = std::log(expected_trace) - 2.0 * s * std::log(threshold);
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

double edge_threshold(double sigma, std::size_t n, double epsilon) {
  return 2.0 * sigma + std::pow(static_cast<double>(n), -6.0 / 11.0 + epsilon);
}

std::vector<double> sample_lambda_max(const EntryDistribution& dist, std::size_t n,
                                      std::size_t trials, std::uint64_t seed,
                                      const EigenOptions& opt) {
  if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
  std::vector<double> out(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
#pragma omp parallel
  {
    std::vector<double> a(n * n);
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
      fill_symmetric(dist, n, derive_seed(seed, static_cast<std::uint64_t>(t)), a);
      for (double& x : a) x *= scale;
      out[static_cast<std::size_t>(t)] = symmetric_eigenvalues(a, n, opt).back();
    }
  }
  return out;
}

std::vector<EdgeExperimentRow> edge_exceedance_experiment(const EntryDistribution& dist,
                                                          std::span<const std::size_t> n_list,
                                                          std::size_t trials, double epsilon,
                                                          std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (trials < 1) throw std::invalid_argument("edge experiment needs trials >= 1");
  std::vector<EdgeExperimentRow> rows;
  for (std::size_t n : n_list) {
    EdgeExperimentRow row;
    row.n = n;
    row.trials = trials;
    row.epsilon = epsilon;
    row.threshold = edge_threshold(dist.sigma(), n, epsilon);
    const auto lambdas = sample_lambda_max(dist, n, trials, seed);
    std::size_t exceed = 0;
    double sum = 0.0;
    for (double l : lambdas) {
      exceed += l > row.threshold ? 1 : 0;
      sum += l;
    }
    row.exceed_fraction = static_cast<double>(exceed) / static_cast<double>(trials);
    row.mean_lambda_max = sum / static_cast<double>(trials);
    rows.push_back(row);
  }
  return rows;
}

ConcentrationResult concentration_from_samples(std::span<const double> lambda_max, double bound_k,
                                               std::size_t n, std::span<const double> t_grid) {
  if (lambda_max.empty()) throw std::invalid_argument("no samples");
  ConcentrationResult result;
  double sum = 0.0;
  for (double l : lambda_max) sum += l;
  result.sample_mean = sum / static_cast<double>(lambda_max.size());
  result.scale = bound_k / std::sqrt(static_cast<double>(n));
  for (double t : t_grid) {
    const double cut = result.scale * t;
    std::size_t hits = 0;
    for (double l : lambda_max) hits += std::abs(l - result.sample_mean) >= cut ? 1 : 0;
    result.rows.push_back({t, static_cast<double>(hits) / static_cast<double>(lambda_max.size()),
                           4.0 * std::exp(-t * t / 32.0)});
  }
  return result;
}

ConcentrationResult concentration_experiment(const EntryDistribution& dist, std::size_t n,
                                             std::size_t trials, std::span<const double> t_grid,
                                             std::uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("concentration experiment needs trials >= 100");
  const auto lambdas = sample_lambda_max(dist, n, trials, seed);
  return concentration_from_samples(lambdas, dist.bound_k(), n, t_grid);
}

std::vector<std::size_t> spectrum_histogram(std::span<const double> eigenvalues, double lo,
                                            double hi, std::size_t bins) {
  if (!(hi > lo) || bins == 0) throw std::invalid_argument("bad histogram range");
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : eigenvalues) {
    if (x < lo || x >= hi) continue;
    const auto b = std::min(bins - 1, static_cast<std::size_t>((x - lo) / width));
    ++counts[b];
  }
  return counts;
}

std::vector<double> semicircle_bin_mass(double sigma, double lo, double hi, std::size_t bins) {
  if (!(hi > lo) || bins == 0) throw std::invalid_argument("bad histogram range");
  std::vector<double> mass(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double a = lo + width * static_cast<double>(b);
    mass[b] = semicircle_cdf(a + width, sigma) - semicircle_cdf(a, sigma);
  }
  return mass;
}

}  // namespace tml
