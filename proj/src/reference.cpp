#include "tml/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tml/paths.hpp"
#include "tml/rng.hpp"

namespace tml::reference {

namespace {

void summarize(std::span<const double> values, double& mean, double& std_error) {
  double sum = 0.0;
  for (double v : values) sum += v;
  mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const auto count = static_cast<double>(values.size());
  std_error = values.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
}

std::vector<double> normalized_sample(const EntryDistribution& dist, std::size_t n, std::uint64_t seed) {
  auto a = reference::sample_symmetric_matrix(dist, n, seed).entries;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& x : a) x *= scale;
  return a;
}

}  // namespace

MatrixSample sample_symmetric_matrix(const EntryDistribution& dist, std::size_t n,
                                     std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
  MatrixSample m;
  m.n = n;
  m.seed = seed;
  m.entries.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double x = dist.quantile(to_unit_double(counter_hash(seed, i * n + j)));
      m.entries[i * n + j] = x;
      m.entries[j * n + i] = x;
    }
  }
  return m;
}

double trace_power(std::span<const double> a, std::size_t n, int s) {
  if (s < 1) throw std::invalid_argument("trace_power needs s >= 1");
  std::vector<double> acc(a.begin(), a.end());
  std::vector<double> next(n * n);
  for (int step = 1; step < 2 * s; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double v = 0.0;
        for (std::size_t k = 0; k < n; ++k) v += acc[i * n + k] * a[k * n + j];
        next[i * n + j] = v;
      }
    }
    acc.swap(next);
  }
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += acc[i * n + i];
  if (!std::isfinite(tr)) throw std::overflow_error("trace is not finite");
  return tr;
}

TraceEstimate mc_expected_trace(const EntryDistribution& dist, std::size_t n, int s,
                                std::size_t trials, std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("mc_expected_trace needs trials >= 2");
  std::vector<double> values(trials);
  for (std::size_t t = 0; t < trials; ++t)
    values[t] = trace_power(normalized_sample(dist, n, derive_seed(seed, t)), n, s);
  TraceEstimate est;
  est.trials = trials;
  est.s = s;
  est.n = n;
  summarize(values, est.mean, est.std_error);
  return est;
}

double exact_expected_trace(const EntryDistribution& dist, int n, int s, bool normalized) {
  double total = 0.0;
  for_each_closed_path(n, s, [&](const ClosedPath& p) { total += path_weight(p, dist, false); });
  return normalized ? total / std::pow(static_cast<double>(n), s) : total;
}

std::vector<double> jacobi_eigenvalues(std::span<const double> a_in, std::size_t n, double tol,
                                       int max_sweeps) {
  if (a_in.size() != n * n) throw std::invalid_argument("matrix has wrong size");
  std::vector<double> a(a_in.begin(), a_in.end());
  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a[i * n + j] * a[i * n + j];
    return std::sqrt(off);
  };
  double total = 0.0;
  for (double x : a) total += x * x;
  const double target = tol * std::sqrt(total);
  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - sn * akq;
          a[k * n + q] = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - sn * aqk;
          a[q * n + k] = sn * apk + c * aqk;
        }
      }
    }
  }
  if (off_norm() > target) throw ConvergenceError(n, off_norm());
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> sample_lambda_max(const EntryDistribution& dist, std::size_t n,
                                      std::size_t trials, std::uint64_t seed) {
  std::vector<double> out(trials);
  for (std::size_t t = 0; t < trials; ++t)
    out[t] = jacobi_eigenvalues(normalized_sample(dist, n, derive_seed(seed, t)), n).back();
  return out;
}

ExpectationResult expected_k_functional_mc(int s, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("Monte Carlo mode needs trials >= 1");
  std::vector<double> values(trials);
  for (std::size_t i = 0; i < trials; ++i)
    values[i] = static_cast<double>(k_functional_by_windows(sample_dyck(s, derive_seed(seed, i))));
  ExpectationResult r;
  r.samples = trials;
  summarize(values, r.value, r.std_error);
  return r;
}

}  // namespace tml::reference
