#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "tml/dyck.hpp"
#include "tml/paths.hpp"
#include "tml/reference.hpp"
#include "tml/verify.hpp"

namespace {

const auto kSkew = tml::named_distribution("skew12");
const auto kRad = tml::named_distribution("rademacher");

TEST(ClosedPath, ParseAndValidation) {
  const auto p = tml::ClosedPath::parse("1,2,3,1,3,2,1");
  EXPECT_EQ(p.n(), 3);
  EXPECT_EQ(p.length(), 6);
  EXPECT_EQ(p.step(4), tml::Edge::of(1, 3));
  EXPECT_EQ(tml::ClosedPath::parse("1,2,1", 5).n(), 5);
  EXPECT_THROW(tml::ClosedPath::parse("1,2,3,1"), std::invalid_argument);
  EXPECT_THROW(tml::ClosedPath::parse("1,2,1,2"), std::invalid_argument);
  EXPECT_THROW(tml::ClosedPath::parse("1,x,1"), std::invalid_argument);
}

TEST(ClosedPath, EvenLengthRequired) {
  EXPECT_THROW(tml::ClosedPath({1, 2, 3, 1}, 3), std::invalid_argument);
  EXPECT_THROW(tml::ClosedPath({1}, 3), std::invalid_argument);
  EXPECT_THROW(tml::ClosedPath({1, 4, 1}, 3), std::invalid_argument);
  EXPECT_THROW(tml::ClosedPath({0, 1, 0}, 3), std::invalid_argument);
  const tml::ClosedPath p({1, 2, 1}, 2);
  EXPECT_EQ(p.s(), 1);
  EXPECT_EQ(p.to_string(), "1,2,1");
}

TEST(Weights, SingleEdgeAndLoopFixtures) {
  // 1->2->1: edge {1,2} twice
  EXPECT_DOUBLE_EQ(tml::path_weight(tml::ClosedPath({1, 2, 1}, 2), kSkew, false), 2.0);
  // 1->1->1->1->1: loop four times, mu4 = 6
  EXPECT_NEAR(tml::path_weight(tml::ClosedPath({1, 1, 1, 1, 1}, 1), kSkew, false), 6.0, 1e-13);
  // a single traversal kills the path
  EXPECT_EQ(tml::path_weight(tml::ClosedPath({1, 2, 3, 3, 1}, 3), kSkew, false), 0.0);
  // normalized by n^s
  EXPECT_DOUBLE_EQ(tml::path_weight(tml::ClosedPath({1, 2, 1}, 4), kSkew, true), 0.5);
}

TEST(Weights, TriangleAndThirdMoments) {
  const tml::ClosedPath even({1, 2, 3, 1, 2, 3, 1}, 3);
  EXPECT_TRUE(tml::is_even_path(even));
  EXPECT_DOUBLE_EQ(tml::path_weight(even, kSkew, false), 8.0);
  // two loops traversed three times each, joined by a doubled edge
  const tml::ClosedPath odd({1, 1, 1, 1, 2, 2, 2, 2, 1}, 2);
  const auto mult = tml::edge_multiplicities(odd);
  EXPECT_EQ(mult.at(tml::Edge::of(1, 1)), 3);
  EXPECT_EQ(mult.at(tml::Edge::of(1, 2)), 2);
  EXPECT_EQ(mult.at(tml::Edge::of(2, 2)), 3);
  EXPECT_FALSE(tml::is_even_path(odd));
  EXPECT_TRUE(tml::is_contributing(odd));
  EXPECT_NEAR(tml::path_weight(odd, kSkew, false), 8.0, 1e-13);
  EXPECT_EQ(tml::path_weight(odd, kRad, false), 0.0);
}

// Exact sums over all n^{2s} sequences, frozen from an independent
// rational-arithmetic brute force.
struct ExactFixture {
  int n;
  int s;
  double skew12;
};

TEST(ExactTrace, Skew12Fixtures) {
  const std::vector<ExactFixture> fixtures = {{1, 2, 6}, {2, 2, 56}, {3, 2, 198}, {2, 3, 496}, {3, 3, 2766}, {2, 4, 5208}, {3, 4, 45654}};
  for (const auto& f : fixtures) {
    EXPECT_NEAR(tml::exact_expected_trace(kSkew, f.n, f.s, false), f.skew12, 1e-9) << f.n << " " << f.s;
    EXPECT_NEAR(tml::exact_expected_trace(kSkew, f.n, f.s, true), f.skew12 / std::pow(f.n, f.s), 1e-12);
    EXPECT_NEAR(tml::reference::exact_expected_trace(kSkew, f.n, f.s, false), f.skew12, 1e-9);
  }
}

TEST(ExactTrace, RademacherFixtures) {
  EXPECT_DOUBLE_EQ(tml::exact_expected_trace(kRad, 2, 2, false), 12.0);
  EXPECT_DOUBLE_EQ(tml::exact_expected_trace(kRad, 3, 2, false), 45.0);
  EXPECT_DOUBLE_EQ(tml::exact_expected_trace(kRad, 3, 3, false), 267.0);
}

TEST(ExactTrace, EvenSplitForRademacherIsEverything) {
  for (int n = 1; n <= 3; ++n)
    for (int s = 1; s <= 3; ++s) {
      const auto split = tml::even_path_contribution(kRad, n, s, false);
      EXPECT_DOUBLE_EQ(split.total, tml::exact_expected_trace(kRad, n, s, false));
      EXPECT_NEAR(split.even, split.total, 1e-12 * split.total);
      EXPECT_EQ(split.odd, 0.0);
    }
}

TEST(ExactTrace, Skew12OddPartAppearsAtLengthEight) {
  EXPECT_EQ(tml::even_path_contribution(kSkew, 3, 3, false).odd, 0.0);
  const auto split = tml::even_path_contribution(kSkew, 2, 4, false);
  EXPECT_NEAR(split.total, 5208.0, 1e-9);
  EXPECT_GT(split.odd, 0.0);
  EXPECT_NEAR(split.even + split.odd, split.total, 1e-9);
}

TEST(ExactTrace, InterpolationReproducesEnumeration) {
  for (int s = 1; s <= 3; ++s)
    for (int n = 1; n <= 3; ++n)
      EXPECT_NEAR(tml::exact_expected_trace_interpolated(kSkew, n, s, false),
                  tml::exact_expected_trace(kSkew, n, s, false), 1e-7);
  // E Tr M^2 = n^2 sigma^2 for any centered law
  EXPECT_NEAR(tml::exact_expected_trace_interpolated(kSkew, 1000, 1, false), 2e6, 1e-3);
}

TEST(ExactTrace, GuardRefusesHugeEnumerations) {
  EXPECT_THROW(tml::exact_expected_trace(kSkew, 30, 5, false), std::length_error);
  EXPECT_THROW(tml::check_enumeration_guard(11, 4), std::length_error);
  EXPECT_NO_THROW(tml::check_enumeration_guard(10, 4));
}

TEST(ExactTrace, RademacherEvenPathsCountedByCatalan) {
  // leading coefficient of n^{s+1}: Catalan number
  for (int s = 1; s <= 3; ++s) {
    const double big = tml::exact_expected_trace_interpolated(kRad, 100000, s, true) / 100000.0;
    EXPECT_NEAR(big / tml::catalan_double(s), 1.0, 1e-3) << s;
  }
}

TEST(OddEdges, MarkedAndNonReturnedInstants) {
  const tml::ClosedPath p({1, 1, 2, 2, 1}, 2);
  EXPECT_EQ(tml::marked_instants(p), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(tml::nonreturned_edges(p), (std::vector<int>{1, 3}));
  EXPECT_EQ(tml::odd_pair_count(p), 1);
  const tml::ClosedPath q({1, 2, 1, 2, 1}, 2);
  EXPECT_EQ(tml::marked_instants(q), (std::vector<int>{1, 3}));
  EXPECT_TRUE(tml::nonreturned_edges(q).empty());
}

TEST(OddEdges, PropertiesOnRandomPaths) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto p = tml::random_closed_path(6, 5, seed);
    const auto mult = tml::edge_multiplicities(p);
    int odd = 0;
    int total = 0;
    for (const auto& [e, k] : mult) {
      odd += k % 2;
      total += k;
    }
    ASSERT_EQ(total, p.length());
    ASSERT_EQ(odd % 2, 0) << p.to_string();
    ASSERT_EQ(static_cast<int>(tml::nonreturned_edges(p).size()), odd);
    ASSERT_EQ(tml::odd_pair_count(p) * 2, odd);
    ASSERT_EQ(tml::is_even_path(p), odd == 0);
    // marked instants: ceil(k/2) per edge
    int marked = 0;
    for (const auto& [e, k] : mult) marked += (k + 1) / 2;
    ASSERT_EQ(static_cast<int>(tml::marked_instants(p).size()), marked);
  }
}

TEST(OddEdges, LiftIsEvenAndLonger) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto p = tml::random_closed_path(5, 6, seed);
    const auto lifted = tml::fk_lift(p);
    ASSERT_TRUE(tml::is_even_path(lifted)) << p.to_string();
    ASSERT_EQ(lifted.length(), p.length() + 2 * tml::odd_pair_count(p));
    ASSERT_EQ(lifted.n(), p.n() + 1);
  }
}

TEST(Enumeration, VisitsEverySequenceOnce) {
  std::size_t count = 0;
  std::vector<int> first;
  std::vector<int> last;
  tml::for_each_closed_path(3, 2, [&](const tml::ClosedPath& p) {
    if (count == 0) first = p.vertices();
    last = p.vertices();
    ++count;
  });
  EXPECT_EQ(count, 81u);
  EXPECT_EQ(first, (std::vector<int>{1, 1, 1, 1, 1}));
  EXPECT_EQ(last, (std::vector<int>{3, 3, 3, 3, 3}));
}

}  // namespace
