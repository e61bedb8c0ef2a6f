#pragma once

// Exact-in-time Lagrangian evolution, the Eulerian semigroup T_t = M S_t L,
// breaking times, conserved-quantity diagnostics and weak-form residuals.

#include <limits>
#include <span>
#include <vector>

#include "hsx/measure.hpp"
#include "hsx/state.hpp"

namespace hsx {

/// y_t = U, U_t = H/2 - H_inf/4, H_t = 0 solved in closed form at every node
/// and for the tail constants. Accepts X in G (hence in F).
LagrangianState evolve(const LagrangianState& x0, double t);

EulerianState evolve_eulerian(const EulerianState& s, double t, const Grid& grid,
                              Membership membership = Membership::StrictF);

/// 2 / sup(-u_x), +inf when u is nondecreasing.
double breaking_time(const EulerianState& s);

struct Trajectory {
  std::vector<double> times;
  std::vector<LagrangianState> states;
  double h_infinity = 0.0;
};

/// Evolves `x0` to each of the (nonnegative, increasing) times.
Trajectory make_trajectory(const LagrangianState& x0, std::span<const double> times);

/// `count` equally spaced slices on [0, t_end].
Trajectory make_trajectory(const LagrangianState& x0, double t_end, std::size_t count);

struct InvariantDefect {
  double rel_defect = 0.0;       // max |y'H' - U'^2| at time t
  double drift = 0.0;            // max change of y'H' - U'^2 since t = 0
  double gronwall_margin = 0.0;  // min (y' + H')(t) - exp(-t/2) (y' + H')(0)
};

/// Cell derivatives at time t are propagated from those of `initial` with the
/// differentiated closed-form solution, which avoids re-differencing evolved
/// nodes (and the cancellation that comes with it).
InvariantDefect invariant_defect(const LagrangianState& initial, double t);

/// phi(t, x) = b((t - t0)/rt) b((x - x0)/rx) with the C1 cubic bump
/// b(s) = 1 - 3s^2 + 2|s|^3 on |s| <= 1.
struct TestFunction {
  double t0 = 0.0;
  double x0 = 0.0;
  double rt = 1.0;
  double rx = 1.0;

  double operator()(double t, double x) const;
  double dt(double t, double x) const;
  double dx(double t, double x) const;
};

/// int int (u phi_t - u u_x phi + V phi) dx dt + int u0 phi(0, x) dx in
/// Lagrangian variables, V = H/2 - H_inf/4. Midpoint rule per cell, trapezoid
/// rule across the trajectory times. Zero for an exact weak solution.
double weak_residual(const Trajectory& traj, const TestFunction& phi);

}  // namespace hsx
