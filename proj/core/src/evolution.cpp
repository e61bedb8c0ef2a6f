#include "hsx/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

LagrangianState evolve(const LagrangianState& x0, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "evolution time must be >= 0");
  x0.check_consistent();
  if (!validate(x0).in_G) throw Error(ErrorKind::NotInF, "initial Lagrangian state violates the class constraints");

  const double hinf = x0.tails.h_inf;
  const double t2 = t * t;
  LagrangianState out = x0;
  for (std::size_t i = 0; i < x0.grid.size(); ++i) {
    const double h = x0.H[i];
    out.y[i] = (0.25 * h - 0.125 * hinf) * t2 + x0.U[i] * t + x0.y[i];
    out.U[i] = (0.5 * h - 0.25 * hinf) * t + x0.U[i];
  }
  out.tails.zeta_minus = x0.tails.zeta_minus + x0.tails.u_minus * t - 0.125 * hinf * t2;
  out.tails.zeta_plus = x0.tails.zeta_plus + x0.tails.u_plus * t + 0.125 * hinf * t2;
  out.tails.u_minus = x0.tails.u_minus - 0.25 * hinf * t;
  out.tails.u_plus = x0.tails.u_plus + 0.25 * hinf * t;
  return out;
}

EulerianState evolve_eulerian(const EulerianState& s, double t, const Grid& grid, Membership membership) {
  return to_eulerian(evolve(to_lagrangian(s, grid), t), membership);
}

double breaking_time(const EulerianState& s) {
  double steepest = 0.0;
  const auto& k = s.u.knots;
  for (std::size_t i = 1; i < k.size(); ++i) {
    steepest = std::min(steepest, (k[i].value - k[i - 1].value) / (k[i].x - k[i - 1].x));
  }
  if (steepest >= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 / -steepest;
}

Trajectory make_trajectory(const LagrangianState& x0, std::span<const double> times) {
  Trajectory traj;
  traj.h_infinity = x0.tails.h_inf;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k > 0 && !(times[k] > times[k - 1])) throw Error(ErrorKind::InvalidArgument, "times must be increasing");
  }
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  for (double t : times) traj.states.push_back(evolve(x0, t));
  return traj;
}

Trajectory make_trajectory(const LagrangianState& x0, double t_end, std::size_t count) {
  if (count < 2 || !(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "need >= 2 slices on a positive interval");
  std::vector<double> times(count);
  for (std::size_t k = 0; k < count; ++k) times[k] = t_end * static_cast<double>(k) / static_cast<double>(count - 1);
  return make_trajectory(x0, times);
}

InvariantDefect invariant_defect(const LagrangianState& initial, double t) {
  const CellSlopes s = cell_slopes(initial);
  const double decay = std::exp(-0.5 * t);
  InvariantDefect out;
  out.gronwall_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    const double dy0 = s.y[i];
    const double dU0 = s.U[i];
    const double dH = s.H[i];
    const double dy = dy0 + dU0 * t + 0.25 * dH * t * t;
    const double dU = dU0 + 0.5 * dH * t;
    const double det0 = dy0 * dH - dU0 * dU0;
    const double det = dy * dH - dU * dU;
    out.rel_defect = std::max(out.rel_defect, std::abs(det));
    out.drift = std::max(out.drift, std::abs(det - det0));
    out.gronwall_margin = std::min(out.gronwall_margin, (dy + dH) - decay * (dy0 + dH));
  }
  return out;
}

namespace {

double bump(double s) {
  const double a = std::abs(s);
  if (a >= 1.0) return 0.0;
  return 1.0 - 3.0 * a * a + 2.0 * a * a * a;
}

double bump_derivative(double s) {
  const double a = std::abs(s);
  if (a >= 1.0) return 0.0;
  return -6.0 * s + 6.0 * s * a;
}

}  // namespace

double TestFunction::operator()(double t, double x) const { return bump((t - t0) / rt) * bump((x - x0) / rx); }

double TestFunction::dt(double t, double x) const {
  return bump_derivative((t - t0) / rt) / rt * bump((x - x0) / rx);
}

double TestFunction::dx(double t, double x) const {
  return bump((t - t0) / rt) * bump_derivative((x - x0) / rx) / rx;
}

double weak_residual(const Trajectory& traj, const TestFunction& phi) {
  const auto& times = traj.times;
  if (times.size() < 2 || traj.states.size() != times.size()) {
    throw Error(ErrorKind::InvalidArgument, "trajectory needs >= 2 slices");
  }
  const double t_lo = phi.t0 - phi.rt;
  const double t_hi = phi.t0 + phi.rt;
  const bool touches_zero = t_lo < 0.0;
  if ((touches_zero && times.front() != 0.0) || (!touches_zero && times.front() > t_lo) || times.back() < t_hi) {
    std::ostringstream msg;
    msg << "time slices [" << times.front() << ", " << times.back() << "] do not cover the support ["
        << std::max(0.0, t_lo) << ", " << t_hi << "]";
    throw Error(ErrorKind::SupportEscapesGrid, msg.str());
  }

  const double hinf = traj.h_infinity;
  // Space integral of one slice; `initial` selects the u0 phi(0, .) term.
  const auto slice = [&](const LagrangianState& x, double t, bool initial) {
    if (x.y.front() > phi.x0 - phi.rx || x.y.back() < phi.x0 + phi.rx) {
      std::ostringstream msg;
      msg << "test function support escapes y(" << t << ", grid) = [" << x.y.front() << ", " << x.y.back() << "]";
      throw Error(ErrorKind::SupportEscapesGrid, msg.str());
    }
    const double h = x.grid.spacing();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.grid.size(); ++i) {
      const double y = 0.5 * (x.y[i] + x.y[i + 1]);
      if (y <= phi.x0 - phi.rx || y >= phi.x0 + phi.rx) continue;
      const double U = 0.5 * (x.U[i] + x.U[i + 1]);
      const double H = 0.5 * (x.H[i] + x.H[i + 1]);
      const double y_xi = (x.y[i + 1] - x.y[i]) / h;
      const double U_xi = (x.U[i + 1] - x.U[i]) / h;
      if (initial) {
        sum += U * phi(t, y) * y_xi;
      } else {
        sum += U * phi.dt(t, y) * y_xi - U * U_xi * phi(t, y) + (0.5 * H - 0.25 * hinf) * y_xi * phi(t, y);
      }
    }
    return sum * h;
  };

  double total = 0.0;
  std::vector<double> values(times.size(), 0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] <= t_lo || times[k] >= t_hi) continue;
    values[k] = slice(traj.states[k], times[k], false);
  }
  for (std::size_t k = 0; k + 1 < times.size(); ++k) total += 0.5 * (times[k + 1] - times[k]) * (values[k] + values[k + 1]);
  if (touches_zero) total += slice(traj.states.front(), 0.0, true);
  return total;
}

}  // namespace hsx
