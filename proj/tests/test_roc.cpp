#include <chrono>

#include <gtest/gtest.h>

#include "hyporank/roc.hpp"
#include "oracles.hpp"

using namespace hyporank;

namespace {

using Labels = std::vector<std::uint8_t>;

}  // namespace

TEST(RocCurve, Examples) {
  EXPECT_EQ(roc_curve(std::vector<double>{0.9, 0.8, 0.2, 0.1}, Labels{1, 1, 0, 0}).auc, 1.0);
  EXPECT_EQ(roc_curve(std::vector<double>{0.3, 0.3, 0.3, 0.3}, Labels{1, 0, 1, 0}).auc, 0.5);
  EXPECT_EQ(roc_curve(std::vector<double>{0.9, 0.4, 0.4, 0.1}, Labels{1, 0, 1, 0}).auc, 0.875);
}

TEST(RocCurve, LowerIsPositiveReversesRanking) {
  std::vector<double> s{0.1, 0.2, 0.8, 0.9};
  Labels y{1, 1, 0, 0};
  EXPECT_EQ(roc_curve(s, y).auc, 0.0);
  EXPECT_EQ(roc_curve(s, y, true).auc, 1.0);
}

TEST(RocCurve, PointsRunFromOriginToOneOne) {
  auto c = roc_curve(std::vector<double>{0.9, 0.4, 0.4, 0.1}, Labels{1, 0, 1, 0});
  ASSERT_EQ(c.points.size(), 4u);
  EXPECT_EQ(c.points.front().fpr, 0.0);
  EXPECT_EQ(c.points.front().tpr, 0.0);
  EXPECT_EQ(c.points[1].tpr, 0.5);
  EXPECT_EQ(c.points[2].fpr, 0.5);
  EXPECT_EQ(c.points[2].tpr, 1.0);
  EXPECT_EQ(c.points.back().fpr, 1.0);
  EXPECT_EQ(c.points.back().tpr, 1.0);
  EXPECT_EQ(c.n_pos, 2u);
  EXPECT_EQ(c.n_neg, 2u);
  EXPECT_NEAR(trapezoid_area(c.points), c.auc, 1e-15);
}

TEST(RocCurve, RejectsSingleClassAndBadInput) {
  EXPECT_THROW(roc_curve(std::vector<double>{1, 2}, Labels{1, 1}), DomainError);
  EXPECT_THROW(roc_curve(std::vector<double>{1, 2}, Labels{1}), DomainError);
  EXPECT_THROW(roc_curve(std::vector<double>{1, std::nan("")}, Labels{1, 0}), DomainError);
}

TEST(RocCurve, MatchesPairwiseOracleWithTies) {
  oracle::Rng rng(12);
  for (int it = 0; it < 300; ++it) {
    const auto n = 2 + rng.below(200);
    std::vector<double> s(n);
    Labels y(n);
    const auto levels = 1 + rng.below(20);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(levels)) / 4.0;
      y[i] = rng.below(2);
    }
    y[0] = 1;
    y[1] = 0;
    const auto c = roc_curve(s, y);
    EXPECT_NEAR(c.auc, oracle::pairwise_auc(s, y), 1e-12);
    EXPECT_NEAR(auc_score(s, y), c.auc, 1e-12);
    EXPECT_NEAR(trapezoid_area(c.points), c.auc, 1e-12);
    // Reversal complements the AUC.
    EXPECT_NEAR(roc_curve(s, y, true).auc, 1.0 - c.auc, 1e-12);
  }
}

TEST(RocCurve, InvariantUnderMonotoneTransform) {
  oracle::Rng rng(14);
  for (int it = 0; it < 100; ++it) {
    const auto n = 10 + rng.below(50);
    std::vector<double> s(n), t(n);
    Labels y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = rng.normal();
      t[i] = std::exp(3 * s[i]) + 1.0;
      y[i] = i % 2;
    }
    EXPECT_EQ(auc_score(s, y), auc_score(t, y));
  }
}
