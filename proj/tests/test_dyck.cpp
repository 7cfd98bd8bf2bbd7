#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "tml/dyck.hpp"
#include "tml/reference.hpp"
#include "tml/rng.hpp"
#include "fixtures.hpp"

namespace {

using namespace tml::fixtures;

TEST(Catalan, SmallValuesAndBigValue) {
  for (int s = 1; s <= 10; ++s) EXPECT_EQ(tml::catalan(s), kCatalan[s - 1]);
  EXPECT_EQ(tml::catalan(0), 1);
  EXPECT_EQ(tml::catalan(50).get_str(), "1978261657756160653623774456");
  EXPECT_NEAR(tml::log_catalan(50), std::log(1978261657756160653623774456.0), 1e-12);
  EXPECT_NEAR(tml::catalan_double(20), 6564120420.0, 0.0);
}

TEST(Catalan, RecurrenceProperty) {
  for (int s = 1; s <= 40; ++s) {
    mpz_class sum = 0;
    for (int k = 0; k < s; ++k) sum += tml::catalan(k) * tml::catalan(s - 1 - k);
    EXPECT_EQ(sum, tml::catalan(s)) << s;
  }
}

TEST(Enumerate, CountsMatchCatalanAndAreDistinctValid) {
  for (int s = 1; s <= 10; ++s) {
    const auto paths = tml::enumerate_dyck(s);
    EXPECT_EQ(static_cast<long>(paths.size()), kCatalan[s - 1]);
    const std::set<tml::DyckPath> unique(paths.begin(), paths.end());
    EXPECT_EQ(unique.size(), paths.size());
    EXPECT_TRUE(std::is_sorted(paths.begin(), paths.end()));
  }
  EXPECT_THROW(tml::enumerate_dyck(15), std::length_error);
}

TEST(DyckPath, ParseAndValidate) {
  const auto p = tml::DyckPath::parse("++-+--");
  EXPECT_EQ(p.half_length(), 3);
  EXPECT_EQ(p.levels(), (std::vector<int>{0, 1, 2, 1, 2, 1, 0}));
  EXPECT_EQ(p.max_level(), 2);
  EXPECT_EQ(p.to_string(), "++-+--");
  EXPECT_THROW(tml::DyckPath::parse("+--+"), std::invalid_argument);
  EXPECT_THROW(tml::DyckPath::parse("++-"), std::invalid_argument);
  EXPECT_THROW(tml::DyckPath::parse("+x"), std::invalid_argument);
}

TEST(KFunctional, SmallestPath) {
  const auto p = tml::DyckPath::parse("+-");
  EXPECT_EQ(tml::descent_window(p, 0), 2);
  EXPECT_EQ(tml::descent_window(p, 1), 0);
  EXPECT_EQ(tml::descent_window(p, 2), 0);
  EXPECT_EQ(tml::k_functional(p), 2);
  EXPECT_EQ(tml::k_functional_by_windows(p), 2);
}

TEST(KFunctional, FastEqualsLiteralOnEveryPath) {
  for (int s = 1; s <= 9; ++s)
    tml::for_each_dyck_path(s, [&](const tml::DyckPath& p) {
      ASSERT_EQ(tml::k_functional(p), tml::k_functional_by_windows(p)) << p.to_string();
      const auto windows = tml::descent_windows(p);
      for (int t = 0; t <= p.length(); ++t) ASSERT_EQ(windows[static_cast<std::size_t>(t)], tml::descent_window(p, t));
    });
}

TEST(KFunctional, ExactTotalsMatchFixtures) {
  for (int s = 1; s <= 10; ++s) {
    EXPECT_EQ(tml::k_functional_total(s), kKTotals[s - 1]) << s;
    const auto r = tml::expected_k_functional(s, 0, tml::ExpectationMode::Exact);
    EXPECT_DOUBLE_EQ(r.value, static_cast<double>(kKTotals[s - 1]) / static_cast<double>(kCatalan[s - 1])) << s;
    EXPECT_EQ(r.std_error, 0.0);
  }
}

TEST(KFunctional, TensorTotalsMatchFixtures) {
  for (int s = 1; s <= 6; ++s) {
    mpz_class total = 0;
    tml::for_each_dyck_path(s, [&](const tml::DyckPath& p) { total += tml::k_functional_tensor(p, 2); });
    EXPECT_EQ(total, kTensor2Totals[s - 1]) << s;
  }
}

TEST(KFunctional, TensorOrderOneIsKWithoutTheOrigin) {
  tml::for_each_dyck_path(7, [](const tml::DyckPath& p) {
    const auto r = tml::descent_windows(p);
    ASSERT_EQ(tml::k_functional_tensor(p, 1), tml::k_functional(p) - r[0]);
  });
  EXPECT_THROW(tml::k_functional_tensor(tml::DyckPath::parse("+-"), 0), std::invalid_argument);
}

TEST(StayAbove, ExactTotalsMatchFixtures) {
  for (int s = 1; s <= 10; ++s) EXPECT_EQ(tml::stay_above_total(s), kStayAboveTotals[s - 1]) << s;
  // every total is a perfect square
  for (int s = 1; s <= 10; ++s) {
    const double c = std::round(std::sqrt(static_cast<double>(kStayAboveTotals[s - 1])));
    EXPECT_EQ(c * c, static_cast<double>(kStayAboveTotals[s - 1]));
  }
}

TEST(Sampling, UniformOverSmallSpace) {
  const int s = 4;
  const auto all = tml::enumerate_dyck(s);
  std::map<tml::DyckPath, int> freq;
  const int draws = 14000;
  for (int i = 0; i < draws; ++i) ++freq[tml::sample_dyck(s, tml::derive_seed(42, static_cast<std::uint64_t>(i)))];
  ASSERT_EQ(freq.size(), all.size());
  double chi2 = 0.0;
  const double expect = static_cast<double>(draws) / static_cast<double>(all.size());
  for (const auto& [p, f] : freq) chi2 += (f - expect) * (f - expect) / expect;
  // 13 degrees of freedom; the 0.999 quantile is 34.5
  EXPECT_LT(chi2, 34.5);
}

TEST(Sampling, AlwaysValidAndDeterministic) {
  for (int s : {1, 5, 64, 300})
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto p = tml::sample_dyck(s, seed);
      ASSERT_EQ(p.half_length(), s);
      ASSERT_TRUE(tml::DyckPath::is_valid(p.steps()));
      ASSERT_EQ(p, tml::sample_dyck(s, seed));
    }
}

TEST(Expectation, MonteCarloMatchesSerialReference) {
  const auto par = tml::expected_k_functional(20, 0, tml::ExpectationMode::MonteCarlo, 500, 3);
  const auto ser = tml::reference::expected_k_functional_mc(20, 500, 3);
  EXPECT_DOUBLE_EQ(par.value, ser.value);
  EXPECT_NEAR(par.std_error, ser.std_error, 1e-12);
  EXPECT_EQ(par.samples, 500u);
}

TEST(Expectation, MonteCarloNearExact) {
  const auto exact = tml::expected_k_functional(10, 0, tml::ExpectationMode::Exact);
  const auto mc = tml::expected_k_functional(10, 0, tml::ExpectationMode::MonteCarlo, 20000, 9);
  EXPECT_NEAR(mc.value, exact.value, 4.0 * mc.std_error);
  const auto pe = tml::stay_above_full_window_expectation(10, tml::ExpectationMode::Exact);
  const auto pm = tml::stay_above_full_window_expectation(10, tml::ExpectationMode::MonteCarlo, 20000, 9);
  EXPECT_NEAR(pm.value, pe.value, 4.0 * pm.std_error);
  EXPECT_THROW(tml::expected_k_functional(13, 0, tml::ExpectationMode::Exact), std::length_error);
  EXPECT_THROW(tml::expected_k_functional(0, 0, tml::ExpectationMode::Exact), std::invalid_argument);
}

TEST(BetaSum, Fixtures) {
  EXPECT_NEAR(tml::beta_sum(1), std::numbers::pi, 1e-12);
  EXPECT_NEAR(tml::beta_sum(2), 8.0 / 3.0, 1e-12);
  for (int I = 1; I <= 100; ++I) EXPECT_TRUE(std::isfinite(tml::beta_sum(I))) << I;
  EXPECT_THROW(tml::beta_sum(0), std::invalid_argument);
}

TEST(MaxLevel, ExactLawSumsToOne) {
  const auto tail = tml::max_level_distribution_exact(8);
  double total = 0.0;
  for (const auto& r : tail.rows) total += r.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
  // max level 1 only for the zigzag; level s only for the tent
  EXPECT_NEAR(tail.rows.front().probability, 1.0 / 1430.0, 1e-15);
  EXPECT_NEAR(tail.rows.back().probability, 1.0 / 1430.0, 1e-15);
}

TEST(MaxLevel, LogLogSlopeOfPowerLaw) {
  const std::vector<double> x = {1, 2, 4, 8};
  const std::vector<double> y = {3, 3 * std::pow(2, 1.5), 3 * std::pow(4, 1.5), 3 * std::pow(8, 1.5)};
  EXPECT_NEAR(tml::loglog_slope(x, y), 1.5, 1e-12);
}

}  // namespace
