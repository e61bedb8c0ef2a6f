#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hsx/errors.hpp"
#include "hsx/evolution.hpp"
#include "hsx/random.hpp"
#include "hsx/scenarios.hpp"
#include "oracles.hpp"

using namespace hsx;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no hsx::Error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Evolve, MatchesExtendedPrecisionCharacteristics) {
  const LagrangianState x0 = random_g0_state(5, Grid(-6.0, 6.0, 401), 0.7);
  for (double t : {0.0, 0.3, 1.0, 4.5}) {
    const LagrangianState x = evolve(x0, t);
    const oracle::NodeState o = oracle::evolve(x0, t);
    for (std::size_t i = 0; i < x.y.size(); ++i) {
      EXPECT_NEAR(x.y[i], static_cast<double>(o.y[i]), 1e-13);
      EXPECT_NEAR(x.U[i], static_cast<double>(o.U[i]), 1e-13);
      EXPECT_EQ(x.H[i], x0.H[i]);
    }
    EXPECT_NO_THROW(x.check_consistent());
  }
}

TEST(Evolve, ZeroTimeIsIdentity) {
  const LagrangianState x0 = random_g0_state(6, Grid(-6.0, 6.0, 101), 0.4);
  const LagrangianState x = evolve(x0, 0.0);
  EXPECT_EQ(x.y, x0.y);
  EXPECT_EQ(x.U, x0.U);
  EXPECT_EQ(x.tails, x0.tails);
}

TEST(Evolve, Errors) {
  const LagrangianState x0 = LagrangianState::identity(Grid(-2.0, 2.0, 41));
  EXPECT_EQ(kind_of([&] { evolve(x0, -1.0); }), ErrorKind::InvalidArgument);
  LagrangianState bad = x0;
  bad.y[5] = bad.y[7];
  EXPECT_EQ(kind_of([&] { evolve(bad, 1.0); }), ErrorKind::NotInF);
}

TEST(Evolve, RelabelingEquivariance) {
  const Grid g(-6.0, 6.0, 2049);
  const LagrangianState x0 = random_g0_state(8, g, 0.5);
  const Relabeling f = Relabeling::bump(0.3, -0.5, 1.2);
  const LagrangianState a = evolve(relabel(x0, f), 1.3);
  const LagrangianState b = relabel(evolve(x0, 1.3), f);
  EXPECT_LT(oracle::max_node_distance(a, b), 1e-12);
}

TEST(Evolve, TailsFollowTheFarField) {
  const Scenario& s = *find_scenario("twochar");
  const LagrangianState x0 = to_lagrangian(s.initial, scenario_grid(s, 257));
  const double t = 1.5;
  const LagrangianState x = evolve(x0, t);
  EXPECT_NEAR(x.tails.u_plus, s.exact_u(t, 1e3), 1e-14);
  EXPECT_NEAR(x.tails.u_minus, s.exact_u(t, -1e3), 1e-14);
}

TEST(EvolveEulerian, SemigroupInEulerianVariables) {
  const Scenario& s = *find_scenario("twochar");
  const Grid g = scenario_grid(s, 1025);
  for (double t : {0.5, 1.0, 2.0}) {
    const EulerianState e = evolve_eulerian(s.initial, t, g);
    for (const Knot& k : e.u.knots) EXPECT_NEAR(k.value, s.exact_u(t, k.x), 1e-12);
    EXPECT_NEAR(e.mu.total_mass(), s.initial.mu.total_mass(), 1e-12);
  }
}

TEST(BreakingTime, Formula) {
  EXPECT_EQ(breaking_time(find_scenario("breaking")->initial), 2.0);
  EXPECT_EQ(breaking_time(EulerianState{{{{0.0, 0.0}, {1.0, 1.0}}, 0.0, 1.0}, RadonMeasure::uniform(0.0, 1.0, 1.0)}),
            std::numeric_limits<double>::infinity());
  EXPECT_EQ(breaking_time(EulerianState{{{{0.0, 0.0}, {0.25, -1.0}}, 0.0, -1.0}, RadonMeasure::uniform(0.0, 0.25, 16.0)}),
            0.5);
}

TEST(Trajectory, SlicesAndValidation) {
  const LagrangianState x0 = LagrangianState::identity(Grid(-2.0, 2.0, 41));
  const Trajectory t = make_trajectory(x0, 2.0, 5);
  ASSERT_EQ(t.times.size(), 5u);
  EXPECT_EQ(t.times.back(), 2.0);
  const std::vector<double> bad{1.0, 0.5};
  EXPECT_THROW(make_trajectory(x0, bad), Error);
}

TEST(Invariants, RelativeDefectConserved) {
  const LagrangianState x0 = random_g0_state(9, Grid(-6.0, 6.0, 801), 0.8);
  const InvariantDefect d0 = invariant_defect(x0, 0.0);
  for (double t : {0.5, 2.0, 5.0}) {
    const InvariantDefect d = invariant_defect(x0, t);
    EXPECT_LE(d.drift, 1e-12);
    EXPECT_NEAR(d.rel_defect, d0.rel_defect, 1e-12);
    EXPECT_GE(d.gronwall_margin, -1e-12);
  }
}

TEST(TestFunction, DerivativesMatchDifferences) {
  const TestFunction phi{1.0, 0.5, 0.7, 0.4};
  const double d = 1e-6;
  for (double t : {0.5, 0.9, 1.3}) {
    for (double x : {0.2, 0.45, 0.8}) {
      EXPECT_NEAR(phi.dt(t, x), (phi(t + d, x) - phi(t - d, x)) / (2 * d), 1e-6);
      EXPECT_NEAR(phi.dx(t, x), (phi(t, x + d) - phi(t, x - d)) / (2 * d), 1e-6);
    }
  }
  EXPECT_EQ(phi(2.0, 0.5), 0.0);
}

TEST(WeakResidual, ZeroForRestState) {
  const Scenario& s = *find_scenario("still");
  const Trajectory traj = make_trajectory(to_lagrangian(s.initial, scenario_grid(s, 257)), 2.0, 65);
  EXPECT_EQ(weak_residual(traj, TestFunction{1.0, 0.0, 0.5, 0.5}), 0.0);
}

TEST(WeakResidual, ConvergesForTwoCharacteristics) {
  const Scenario& s = *find_scenario("twochar");
  const TestFunction phi{1.0, 0.125, 0.75, 0.5};
  double prev = 1.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t n = std::size_t{256} << k;
    const Trajectory traj = make_trajectory(to_lagrangian(s.initial, scenario_grid(s, n)), 2.0, (std::size_t{32} << k) + 1);
    const double r = std::abs(weak_residual(traj, phi));
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(WeakResidual, SupportEscapesGrid) {
  const Scenario& s = *find_scenario("breaking");
  const Trajectory traj = make_trajectory(to_lagrangian(s.initial, scenario_grid(s, 129)), 2.0, 17);
  EXPECT_EQ(kind_of([&] { weak_residual(traj, TestFunction{1.0, 0.0, 2.0, 0.5}); }), ErrorKind::SupportEscapesGrid);
  EXPECT_EQ(kind_of([&] { weak_residual(traj, TestFunction{1.0, 100.0, 0.5, 0.5}); }), ErrorKind::SupportEscapesGrid);
}
