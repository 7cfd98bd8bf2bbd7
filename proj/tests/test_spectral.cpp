#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "tml/dyck.hpp"
#include "tml/paths.hpp"
#include "tml/reference.hpp"
#include "tml/spectral.hpp"
#include "tml/symmetric_eigen.hpp"

namespace {

tml::MatrixSample dense(std::size_t n, std::vector<double> entries) {
  tml::MatrixSample m;
  m.n = n;
  m.entries = std::move(entries);
  return m;
}

TEST(Eigen, TwoByTwoFixtures) {
  EXPECT_NEAR(tml::largest_eigenvalue(dense(2, {0, 1, 1, 0}), false), 1.0, 1e-14);
  EXPECT_NEAR(tml::spectral_norm(dense(2, {0, -3, -3, 0}), false), 3.0, 1e-14);
  EXPECT_NEAR(tml::largest_eigenvalue(dense(2, {0, -3, -3, 0}), false), 3.0, 1e-14);
  EXPECT_NEAR(tml::largest_eigenvalue(dense(1, {-4}), false), -4.0, 0.0);
  EXPECT_NEAR(tml::spectral_norm(dense(1, {-4}), false), 4.0, 0.0);
}

TEST(Eigen, PathGraphClosedForm) {
  const std::size_t n = 50;
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) a[i * n + i + 1] = a[(i + 1) * n + i] = 1.0;
  const auto ev = tml::symmetric_eigenvalues(a, n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double want = 2.0 * std::cos(static_cast<double>(n + 1 - k) * std::numbers::pi / static_cast<double>(n + 1));
    EXPECT_NEAR(ev[k - 1], want, 1e-12);
  }
}

TEST(Eigen, AllOnesMatrix) {
  const std::size_t n = 30;
  std::vector<double> a(n * n, 1.0);
  const auto ev = tml::symmetric_eigenvalues(a, n);
  EXPECT_NEAR(ev.back(), 30.0, 1e-11);
  for (std::size_t i = 0; i + 1 < n; ++i) EXPECT_NEAR(ev[i], 0.0, 1e-11);
}

TEST(Eigen, QlAgreesWithJacobiReference) {
  const auto d = tml::named_distribution("skew12");
  for (std::size_t n : {3u, 10u, 40u, 90u}) {
    const auto m = tml::sample_symmetric_matrix(d, n, 100 + n);
    const auto a = m.normalized_entries();
    const auto ql = tml::symmetric_eigenvalues(a, n);
    const auto jac = tml::reference::jacobi_eigenvalues(a, n);
    ASSERT_EQ(ql.size(), jac.size());
    const double scale = std::max(std::abs(jac.front()), std::abs(jac.back()));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ql[i], jac[i], 1e-9 * scale) << n << " " << i;
  }
}

TEST(Eigen, SpectrumInvariants) {
  const auto d = tml::named_distribution("rademacher");
  const auto m = tml::sample_symmetric_matrix(d, 60, 3);
  const auto ev = tml::symmetric_eigenvalues(m.entries, 60);
  EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
  double trace = 0.0;
  double frob = 0.0;
  for (std::size_t i = 0; i < 60; ++i) trace += m(i, i);
  for (double x : m.entries) frob += x * x;
  double s1 = 0.0;
  double s2 = 0.0;
  for (double x : ev) {
    s1 += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s1, trace, 1e-9);
  EXPECT_NEAR(s2, frob, 1e-9 * frob);
  EXPECT_GE(tml::spectral_norm(m, true), tml::largest_eigenvalue(m, true));
}

TEST(Eigen, TridiagonalizationPreservesSpectrum) {
  const auto d = tml::named_distribution("skew12");
  const auto m = tml::sample_symmetric_matrix(d, 25, 8);
  const auto t = tml::tridiagonalize(m.entries, 25);
  ASSERT_EQ(t.diag.size(), 25u);
  ASSERT_EQ(t.offdiag.size(), 24u);
  const auto a = tml::tridiagonal_eigenvalues(t);
  const auto b = tml::reference::jacobi_eigenvalues(m.entries, 25);
  for (std::size_t i = 0; i < 25; ++i) EXPECT_NEAR(a[i], b[i], 1e-9 * 10);
}

TEST(Eigen, IterationCapRaisesConvergenceError) {
  const auto d = tml::named_distribution("rademacher");
  const auto m = tml::sample_symmetric_matrix(d, 20, 1);
  tml::EigenOptions opt;
  opt.max_iterations = 0;
  EXPECT_THROW(tml::symmetric_eigenvalues(m.entries, 20, opt), tml::ConvergenceError);
}

TEST(Trace, RoutesAgree) {
  const auto d = tml::named_distribution("skew12");
  for (std::size_t n : {3u, 16u, 64u}) {
    const auto m = tml::sample_symmetric_matrix(d, n, 40 + n);
    for (int s = 1; s <= 8; ++s) {
      const double power = tml::trace_power(m, s, true, tml::TraceRoute::MatrixPower);
      const double eig = tml::trace_power(m, s, true, tml::TraceRoute::Eigenvalues);
      EXPECT_NEAR(power / eig, 1.0, 1e-6) << n << " " << s;
    }
  }
}

TEST(Trace, AgreesWithNaiveReference) {
  const auto d = tml::named_distribution("skew12");
  const auto m = tml::sample_symmetric_matrix(d, 12, 2);
  const auto a = m.normalized_entries();
  for (int s = 1; s <= 5; ++s)
    EXPECT_NEAR(tml::trace_power(a, 12, s, tml::TraceRoute::MatrixPower) / tml::reference::trace_power(a, 12, s),
                1.0, 1e-12);
}

TEST(Trace, TwoByTwoFixture) {
  // [[0,1],[1,0]]^{2s} = I
  EXPECT_DOUBLE_EQ(tml::trace_power(dense(2, {0, 1, 1, 0}), 3, false), 2.0);
  EXPECT_THROW(tml::trace_power(dense(2, {0, 1, 1, 0}), 0, false), std::invalid_argument);
}

TEST(Trace, MonteCarloMatchesSerialReferenceSampleForSample) {
  const auto d = tml::named_distribution("skew12");
  const auto par = tml::mc_expected_trace(d, 6, 2, 200, 11);
  const auto ser = tml::reference::mc_expected_trace(d, 6, 2, 200, 11);
  EXPECT_NEAR(par.mean, ser.mean, 1e-10 * std::abs(ser.mean));
  EXPECT_NEAR(par.std_error, ser.std_error, 1e-8 * ser.std_error);
}

TEST(Trace, MonteCarloNearExactSmallCase) {
  const auto d = tml::named_distribution("skew12");
  const double exact = tml::exact_expected_trace(d, 3, 2, true);
  EXPECT_DOUBLE_EQ(exact, 22.0);
  const auto est = tml::mc_expected_trace(d, 3, 2, 20000, 5);
  EXPECT_NEAR(est.mean, exact, 4.0 * est.std_error);
  EXPECT_THROW(tml::mc_expected_trace(d, 3, 2, 1, 5), std::invalid_argument);
}

TEST(Trace, ThreadCountDoesNotChangeResults) {
  const auto d = tml::named_distribution("rademacher");
  const auto a = tml::sample_lambda_max(d, 30, 8, 9);
  const auto b = tml::sample_lambda_max(d, 30, 8, 9);
  EXPECT_EQ(a, b);
  const auto c = tml::reference::sample_lambda_max(d, 30, 8, 9);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], c[i], 1e-10);
}

TEST(Wigner, PredictionFixtures) {
  EXPECT_NEAR(tml::wigner_trace_prediction(10, 1, 1.0), 10.0, 1e-12);
  EXPECT_NEAR(tml::wigner_trace_prediction(10, 3, 1.0), 50.0, 1e-12);
  EXPECT_NEAR(tml::wigner_trace_prediction(10, 3, std::sqrt(2.0)), 400.0, 1e-9);
  const double ratio = tml::wigner_trace_prediction_asymptotic(1, 200, 1.0) / tml::wigner_trace_prediction(1, 200, 1.0);
  EXPECT_NEAR(ratio, 1.0, 0.01);
}

TEST(Wigner, LeadingTermMatchesInterpolatedExact) {
  const auto d = tml::named_distribution("rademacher");
  // rademacher s = 2: E Tr M^4 = 2n^3 - n^2
  EXPECT_NEAR(tml::exact_expected_trace_interpolated(d, 200, 2, true), 399.0, 1e-9);
  const double rel = tml::exact_expected_trace_interpolated(d, 200, 2, true) / tml::wigner_trace_prediction(200, 2, 1.0);
  EXPECT_NEAR(rel, 1.0, 0.01);
}

TEST(Markov, BoundFixtures) {
  EXPECT_DOUBLE_EQ(tml::markov_tail_bound(16.0, 1, 8.0), 0.25);
  EXPECT_DOUBLE_EQ(tml::markov_tail_bound(1e9, 1, 2.0), 1.0);
  EXPECT_NEAR(tml::edge_threshold(std::sqrt(2.0), 2000, 0.05),
              2.0 * std::sqrt(2.0) + std::pow(2000.0, -6.0 / 11.0 + 0.05), 1e-15);
}

TEST(Semicircle, BinMassSumsToOneOnCoveringRange) {
  const auto mass = tml::semicircle_bin_mass(std::sqrt(2.0), -3.0, 3.0, 17);
  EXPECT_NEAR(std::accumulate(mass.begin(), mass.end(), 0.0), 1.0, 1e-12);
  const auto half = tml::semicircle_bin_mass(1.0, 0.0, 2.0, 1);
  EXPECT_NEAR(half[0], 0.5, 1e-12);
}

TEST(Semicircle, HistogramCountsInRangeOnly) {
  const std::vector<double> ev = {-5.0, -1.0, 0.0, 0.5, 1.99, 2.0};
  const auto h = tml::spectrum_histogram(ev, -2.0, 2.0, 4);
  EXPECT_EQ(h, (std::vector<std::size_t>{0, 1, 2, 1}));
  EXPECT_THROW(tml::spectrum_histogram(ev, 1.0, 1.0, 4), std::invalid_argument);
}

TEST(Concentration, TailFromSamples) {
  const std::vector<double> lambdas = {0.0, 0.0, 0.0, 1.0};
  // mean 0.25; deviations 0.25, 0.25, 0.25, 0.75; scale K/sqrt(n) = 0.5
  const std::vector<double> grid = {0.0, 1.0, 2.0};
  const auto r = tml::concentration_from_samples(lambdas, 1.0, 4, grid);
  EXPECT_DOUBLE_EQ(r.sample_mean, 0.25);
  EXPECT_DOUBLE_EQ(r.scale, 0.5);
  EXPECT_DOUBLE_EQ(r.rows[0].empirical_tail, 1.0);
  EXPECT_DOUBLE_EQ(r.rows[1].empirical_tail, 0.25);
  EXPECT_DOUBLE_EQ(r.rows[2].empirical_tail, 0.0);
  EXPECT_DOUBLE_EQ(r.rows[1].bound, 4.0 * std::exp(-1.0 / 32.0));
}

TEST(Concentration, EdgeExperimentShape) {
  const auto d = tml::named_distribution("skew12");
  const std::vector<std::size_t> ns = {40, 80};
  const auto rows = tml::edge_exceedance_experiment(d, ns, 10, 0.05, 1);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_GE(r.exceed_fraction, 0.0);
    EXPECT_LE(r.exceed_fraction, 1.0);
    EXPECT_DOUBLE_EQ(r.threshold, tml::edge_threshold(d.sigma(), r.n, 0.05));
  }
}

}  // namespace
