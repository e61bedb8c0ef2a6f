#include <gtest/gtest.h>

#include <cmath>

#include "hsx/errors.hpp"
#include "hsx/random.hpp"
#include "hsx/scenarios.hpp"
#include "hsx/state.hpp"
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

TEST(Lagrangian, IdentityIsInEveryClass) {
  const LagrangianState x = LagrangianState::identity(Grid(-2.0, 2.0, 41));
  const ClassReport r = validate(x);
  EXPECT_TRUE(r.in_F && r.in_G && r.in_F0 && r.in_G0);
  EXPECT_EQ(r.identity_defect, 0.0);
  EXPECT_EQ(x.at(5.0).y, 5.0);
  EXPECT_EQ(x.at(-7.0).y, -7.0);
}

TEST(Lagrangian, TripleRoundTrip) {
  const LagrangianState x = random_g0_state(3, Grid(-6.0, 6.0, 301), 0.5);
  const LagrangianState back = LagrangianState::from_triple(x.to_triple());
  EXPECT_EQ(back.y, x.y);
  EXPECT_EQ(back.U, x.U);
  EXPECT_EQ(back.H, x.H);
  EXPECT_EQ(back.tails, x.tails);
}

TEST(Lagrangian, ConsistencyChecks) {
  LagrangianState x = LagrangianState::identity(Grid(-2.0, 2.0, 41));
  x.U.back() = 1.0;
  EXPECT_EQ(kind_of([&] { x.check_consistent(); }), ErrorKind::TailMismatch);
  x.U.pop_back();
  EXPECT_EQ(kind_of([&] { x.check_consistent(); }), ErrorKind::GridMismatch);
}

TEST(Classes, NegativeSlopeIsNotInG) {
  LagrangianState x = LagrangianState::identity(Grid(-2.0, 2.0, 41));
  x.y[20] = x.y[19] - 0.01;
  x.tails.zeta_plus = 0.0;
  const ClassReport r = validate(x);
  EXPECT_FALSE(r.in_G);
  EXPECT_FALSE(r.in_F);
}

TEST(Classes, CompressionBreaksF0ButNotG) {
  // y' H' > U'^2 is in G, not in F.
  const Grid g(-2.0, 2.0, 41);
  LagrangianState x = LagrangianState::identity(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi = g.node(i);
    const double b = std::clamp(xi, 0.0, 1.0) * 0.5;
    x.H[i] = b;
    x.y[i] = xi - b;
  }
  x.tails.h_inf = 0.5;
  x.tails.zeta_plus = -0.5;
  const ClassReport r = validate(x);
  EXPECT_TRUE(r.in_G0);
  EXPECT_FALSE(r.in_F);
  EXPECT_EQ(kind_of([&] { to_eulerian(x, Membership::StrictF); }), ErrorKind::NotInF);
  EXPECT_NO_THROW(to_eulerian(x, Membership::RelaxedG));
}

TEST(ToLagrangian, MatchesBisectionOracle) {
  for (const Scenario& s : builtin_scenarios()) {
    const Grid g = scenario_grid(s, 257);
    const LagrangianState x = to_lagrangian(s.initial, g);
    EXPECT_TRUE(validate(x).in_F0) << s.name;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double xi = g.node(i);
      const double y = oracle::lagrangian_y(s.initial.mu, xi, -100.0, 100.0);
      EXPECT_NEAR(x.y[i], y, 1e-12) << s.name << " at " << xi;
      EXPECT_NEAR(x.U[i], s.initial.u(y), 1e-12) << s.name;
      EXPECT_NEAR(x.H[i], xi - y, 1e-12) << s.name;
    }
  }
}

TEST(ToLagrangian, OffGridKinksStillInverse) {
  const Scenario& s = *find_scenario("breaking");
  const Grid g(-2.3, 4.1, 199);
  const LagrangianState x = to_lagrangian(s.initial, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(x.y[i], oracle::lagrangian_y(s.initial.mu, g.node(i), -100.0, 100.0), 1e-12);
  }
  EXPECT_TRUE(validate(x).in_G0);
}

TEST(ToLagrangian, DomainTooNarrow) {
  const Scenario& s = *find_scenario("dirac8");
  EXPECT_EQ(kind_of([&] { to_lagrangian(s.initial, Grid(-2.0, 5.0, 101)); }), ErrorKind::DomainTooNarrow);
}

TEST(ToEulerian, RoundTripOnScenarios) {
  for (const Scenario& s : builtin_scenarios()) {
    const EulerianState back = to_eulerian(to_lagrangian(s.initial, scenario_grid(s, 513)));
    const EulerianGap gap = eulerian_gap(back, s.initial);
    EXPECT_LE(gap.u, 1e-12) << s.name;
    EXPECT_LE(gap.cumulative, 1e-12) << s.name;
  }
}

TEST(ToEulerian, PlateauBecomesAtom) {
  const Scenario& s = *find_scenario("dirac8");
  const LagrangianState x = to_lagrangian(s.initial, scenario_grid(s, 129));
  const EulerianState e = to_eulerian(x);
  ASSERT_EQ(e.mu.atoms().size(), 1u);
  EXPECT_EQ(e.mu.atoms()[0].position, 0.0);
  EXPECT_EQ(e.mu.atoms()[0].mass, 8.0);
}

TEST(Relabeling, BumpInverseAndAlpha) {
  const Relabeling f = Relabeling::bump(0.3, 0.5, 1.5);
  const Relabeling g = f.inverse();
  for (double xi = -2.0; xi <= 3.0; xi += 0.0625) EXPECT_NEAR(g(f(xi)), xi, 1e-12);
  EXPECT_EQ(f(-5.0), -5.0);
  EXPECT_GT(f.alpha(), 0.6);
  EXPECT_EQ(Relabeling().alpha(), 0.0);
  EXPECT_THROW(Relabeling({{0.0, 0.0}, {1.0, -1.0}}), Error);
}

TEST(Relabeling, ProjectionUndoesRelabeling) {
  const Grid g(-6.0, 6.0, 2049);
  const LagrangianState x = random_g0_state(11, g, 0.5);
  const LagrangianState moved = relabel(x, Relabeling::bump(0.4, 0.3, 1.5));
  EXPECT_TRUE(validate(moved).in_G);
  EXPECT_GT(validate(moved).identity_defect, 0.1);
  const LagrangianState back = project_pi(moved);
  EXPECT_LT(validate(back).identity_defect, 1e-12);
  EXPECT_LT(oracle::max_node_distance(back, x), 1e-4);
}

TEST(ProjectPi, RejectsNonInvertible) {
  LagrangianState x = LagrangianState::identity(Grid(-2.0, 2.0, 41));
  x.y[10] = x.y[9];
  EXPECT_EQ(kind_of([&] { project_pi(x); }), ErrorKind::NotInvertible);
}
