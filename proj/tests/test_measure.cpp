#include <gtest/gtest.h>

#include "hsx/errors.hpp"
#include "hsx/measure.hpp"
#include "oracles.hpp"

using namespace hsx;

TEST(PiecewiseLinear, EvaluatesAndExtends) {
  PiecewiseLinear u{{{0.0, 0.0}, {1.0, -1.0}}, 0.0, -1.0};
  EXPECT_EQ(u(-3.0), 0.0);
  EXPECT_EQ(u(0.25), -0.25);
  EXPECT_EQ(u(7.0), -1.0);
  EXPECT_EQ(u.slope_between(0.1, 0.9), -1.0);
  EXPECT_NO_THROW(u.validate());
  u.tail_plus = 0.0;
  EXPECT_THROW(u.validate(), Error);
}

TEST(RadonMeasure, MassBelowIsLeftContinuous) {
  const RadonMeasure mu({{0.0, 2.0}}, {{1.0, 0.0}, {1.0, 3.0}, {2.0, 3.0}, {2.0, 0.0}});
  EXPECT_EQ(mu.mass_below(0.0), 0.0);
  EXPECT_EQ(mu.mass_below(0.5), 2.0);
  EXPECT_DOUBLE_EQ(mu.mass_below(1.5), 3.5);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 5.0);
  EXPECT_EQ(mu.atomic_mass(), 2.0);
  EXPECT_EQ(mu.density_right(1.0), 3.0);
  EXPECT_EQ(mu.density_left(1.0), 0.0);
  for (double x : {-1.0, 0.0, 0.3, 1.0, 1.25, 1.9, 2.0, 3.0}) {
    EXPECT_NEAR(mu.mass_below(x), static_cast<double>(oracle::mass_below(mu, x)), 1e-14);
  }
  const auto hull = mu.hull();
  ASSERT_TRUE(hull);
  EXPECT_EQ(hull->first, 0.0);
  EXPECT_EQ(hull->second, 2.0);
}

TEST(RadonMeasure, EmptyMeasure) {
  const RadonMeasure mu;
  EXPECT_EQ(mu.total_mass(), 0.0);
  EXPECT_EQ(mu.mass_below(1.0), 0.0);
  EXPECT_FALSE(mu.hull());
}

TEST(RadonMeasure, ZeroAtomsDropped) {
  const RadonMeasure mu({{0.0, 0.0}, {1.0, 1.0}}, {});
  EXPECT_EQ(mu.atoms().size(), 1u);
}

TEST(EulerianState, CompatibilityAndMembership) {
  EulerianState s{{{{0.0, 0.0}, {1.0, -1.0}}, 0.0, -1.0}, RadonMeasure::uniform(0.0, 1.0, 1.0)};
  EXPECT_EQ(compatibility_defect(s), 0.0);
  EXPECT_NO_THROW(check_in_D(s));
  s.mu = RadonMeasure::uniform(0.0, 1.0, 2.0);
  EXPECT_GT(compatibility_defect(s), 0.5);
  EXPECT_THROW(check_in_D(s), Error);
  // Extra singular mass is allowed.
  s.mu = RadonMeasure({{3.0, 1.0}}, RadonMeasure::uniform(0.0, 1.0, 1.0).density_knots());
  EXPECT_NO_THROW(check_in_D(s));
  const auto hull = s.active_hull();
  ASSERT_TRUE(hull);
  EXPECT_EQ(hull->second, 3.0);
}

TEST(EulerianGap, DetectsDifferences) {
  const EulerianState a{PiecewiseLinear::constant(0.0), RadonMeasure::dirac(0.0, 1.0)};
  const EulerianState b{PiecewiseLinear::constant(0.0), RadonMeasure::dirac(0.5, 1.0)};
  const EulerianGap same = eulerian_gap(a, a);
  EXPECT_EQ(same.u, 0.0);
  EXPECT_EQ(same.cumulative, 0.0);
  EXPECT_EQ(eulerian_gap(a, b).cumulative, 1.0);
}
