#include "hsx/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

LagrangianState LagrangianState::identity(const Grid& grid) {
  const std::size_t n = grid.size();
  return LagrangianState{grid, grid.nodes(), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), Tails{}};
}

LagrangianState LagrangianState::from_triple(const BanachTriple& x) {
  const Grid& grid = x.grid;
  LagrangianState out{grid, x.zeta.samples, x.u.samples, x.h.samples, Tails{}};
  for (std::size_t i = 0; i < grid.size(); ++i) out.y[i] += grid.node(i);
  out.tails = Tails{x.zeta.tail_minus, x.zeta.tail_plus, x.u.tail_minus, x.u.tail_plus, x.h.tail_plus};
  return out;
}

BanachTriple LagrangianState::to_triple() const {
  BanachTriple out{grid, {y, tails.zeta_minus, tails.zeta_plus}, {U, tails.u_minus, tails.u_plus}, {H, 0.0, tails.h_inf}};
  for (std::size_t i = 0; i < grid.size(); ++i) out.zeta.samples[i] -= grid.node(i);
  return out;
}

void LagrangianState::check_consistent(double tol) const {
  const std::size_t n = grid.size();
  if (y.size() != n || U.size() != n || H.size() != n) {
    throw Error(ErrorKind::GridMismatch, "state arrays differ in length from the grid");
  }
  const double scale = std::max(1.0, magnitude());
  const auto check = [&](double got, double want, const char* name) {
    if (std::abs(got - want) > tol * scale) {
      std::ostringstream msg;
      msg << name << ": end sample " << got << " vs tail " << want;
      throw Error(ErrorKind::TailMismatch, msg.str(), name);
    }
  };
  check(y.front() - grid.xi_min(), tails.zeta_minus, "zeta_minus");
  check(y.back() - grid.xi_max(), tails.zeta_plus, "zeta_plus");
  check(U.front(), tails.u_minus, "u_minus");
  check(U.back(), tails.u_plus, "u_plus");
  check(H.front(), 0.0, "h_minus");
  check(H.back(), tails.h_inf, "h_inf");
}

LagrangianPoint LagrangianState::at(double xi) const {
  if (xi <= grid.xi_min()) return {y.front() + (xi - grid.xi_min()), U.front(), H.front()};
  if (xi >= grid.xi_max()) return {y.back() + (xi - grid.xi_max()), U.back(), H.back()};
  const std::size_t k = grid.cell_of(xi);
  const double theta = (xi - grid.node(k)) / grid.spacing();
  const auto lerp = [theta](double a, double b) { return a + theta * (b - a); };
  return {lerp(y[k], y[k + 1]), lerp(U[k], U[k + 1]), lerp(H[k], H[k + 1])};
}

double LagrangianState::magnitude() const {
  double m = std::max(std::abs(grid.xi_min()), std::abs(grid.xi_max()));
  for (const auto* v : {&y, &U, &H}) {
    for (double a : *v) m = std::max(m, std::abs(a));
  }
  return m;
}

CellSlopes cell_slopes(const LagrangianState& x) {
  const std::size_t cells = x.grid.size() - 1;
  const double inv_h = 1.0 / x.grid.spacing();
  CellSlopes s;
  s.y.resize(cells);
  s.U.resize(cells);
  s.H.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    s.y[i] = (x.y[i + 1] - x.y[i]) * inv_h;
    s.U[i] = (x.U[i + 1] - x.U[i]) * inv_h;
    s.H[i] = (x.H[i + 1] - x.H[i]) * inv_h;
  }
  return s;
}

double slope_rounding(double magnitude, double h) {
  return 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, magnitude) / h;
}

ClassReport validate(const LagrangianState& x) {
  ClassReport r;
  const auto s = cell_slopes(x);
  const double h = x.grid.spacing();
  const double mag = x.magnitude();
  const double round = slope_rounding(mag, h);

  bool mono = true;
  bool f_ok = true;
  bool g_ok = true;
  double c = std::numeric_limits<double>::infinity();
  double max_dz = 0.0;
  double max_inv_dz = 0.0;
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    const double dy = s.y[i];
    const double dU = s.U[i];
    const double dH = s.H[i];
    if (dy < -(kTolMono + round) || dH < -(kTolMono + round)) mono = false;
    const double sum = dy + dH;
    c = std::min(c, sum);
    const double det = dy * dH - dU * dU;
    const double allow = kTolRel * sum * sum + round * (std::abs(dy) + std::abs(dH) + 2.0 * std::abs(dU) + round);
    if (std::abs(det) > allow) f_ok = false;
    if (det < -allow) g_ok = false;
    if (sum > 0.0) {
      r.f_defect = std::max(r.f_defect, std::abs(det) / (sum * sum));
      r.g_defect = std::max(r.g_defect, std::max(0.0, -det) / (sum * sum));
      max_dz = std::max(max_dz, std::abs(sum - 1.0));
      max_inv_dz = std::max(max_inv_dz, std::abs(1.0 / sum - 1.0));
    } else {
      max_inv_dz = std::numeric_limits<double>::infinity();
    }
  }
  r.c_estimate = c;
  const bool c_ok = c > kTolMono;
  r.in_F = mono && f_ok && c_ok;
  r.in_G = mono && g_ok && c_ok;

  double sup = 0.0;
  for (std::size_t i = 0; i < x.grid.size(); ++i) {
    sup = std::max(sup, std::abs(x.y[i] + x.H[i] - x.grid.node(i)));
  }
  sup = std::max({sup, std::abs(x.tails.zeta_minus), std::abs(x.tails.zeta_plus + x.tails.h_inf)});
  r.identity_defect = sup;
  const bool on_slice = sup <= kTolIdentity * std::max(1.0, mag);
  r.in_F0 = r.in_F && on_slice;
  r.in_G0 = r.in_G && on_slice;
  r.alpha_estimate = 2.0 * sup + max_dz + max_inv_dz;
  return r;
}

LagrangianState to_lagrangian(const EulerianState& state, const Grid& grid) {
  check_in_D(state);
  const RadonMeasure& mu = state.mu;
  const double total = mu.total_mass();
  if (const auto hull = state.active_hull()) {
    if (!(grid.xi_min() < hull->first) || !(grid.xi_max() > hull->second + total)) {
      std::ostringstream msg;
      msg << "label grid [" << grid.xi_min() << ", " << grid.xi_max() << "] must strictly contain ["
          << hull->first << ", " << hull->second + total << "]";
      throw Error(ErrorKind::DomainTooNarrow, msg.str());
    }
  }

  std::vector<double> breaks;
  for (const Atom& a : mu.atoms()) breaks.push_back(a.position);
  for (const Knot& k : mu.density_knots()) breaks.push_back(k.x);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // G(b-) and G(b+) at every breakpoint.
  std::vector<double> g_left(breaks.size());
  std::vector<double> g_right(breaks.size());
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const double b = breaks[k];
    g_left[k] = b + mu.mass_below(b);
    g_right[k] = g_left[k];
    const auto& atoms = mu.atoms();
    const auto it = std::lower_bound(atoms.begin(), atoms.end(), b,
                                     [](const Atom& a, double v) { return a.position < v; });
    if (it != atoms.end() && it->position == b) g_right[k] += it->mass;
  }

  const auto invert = [&](double xi) -> double {
    const auto it = std::upper_bound(g_left.begin(), g_left.end(), xi);
    if (it == g_left.begin()) return xi;
    const auto k = static_cast<std::size_t>(it - g_left.begin()) - 1;
    if (xi <= g_right[k]) return breaks[k];
    if (k + 1 == breaks.size()) return breaks[k] + (xi - g_right[k]);
    // Inside (b_k, b_{k+1}) the density is linear: G is quadratic there.
    const double width = breaks[k + 1] - breaks[k];
    const double rho = mu.density_right(breaks[k]);
    const double slope = (mu.density_left(breaks[k + 1]) - rho) / width;
    const double r = xi - g_right[k];
    const double a = 1.0 + rho;
    const double d = 2.0 * r / (a + std::sqrt(std::max(0.0, a * a + 2.0 * slope * r)));
    return breaks[k] + std::clamp(d, 0.0, width);
  };

  const std::size_t n = grid.size();
  LagrangianState out{grid, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), Tails{}};
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = grid.node(i);
    out.y[i] = invert(xi);
    out.H[i] = xi - out.y[i];
    out.U[i] = state.u(out.y[i]);
  }
  out.tails = Tails{0.0, -total, state.u.tail_minus, state.u.tail_plus, total};
  return out;
}

EulerianState to_eulerian(const LagrangianState& x, Membership membership) {
  x.check_consistent();
  const ClassReport report = validate(x);
  if (membership == Membership::StrictF && !report.in_F) {
    std::ostringstream msg;
    msg << "state is not in F (f_defect " << report.f_defect << ", c " << report.c_estimate << ")";
    throw Error(ErrorKind::NotInF, msg.str());
  }
  if (membership == Membership::RelaxedG && !report.in_G) {
    std::ostringstream msg;
    msg << "state is not in G (g_defect " << report.g_defect << ", c " << report.c_estimate << ")";
    throw Error(ErrorKind::NotInF, msg.str());
  }

  const std::size_t n = x.grid.size();
  const double plateau = kPlateauFactor * x.grid.spacing();
  std::vector<Knot> u_knots{{x.y[0], x.U[0]}};
  std::vector<Atom> atoms;
  struct Segment {
    double a, b, value;
  };
  std::vector<Segment> segments;
  double pending_mass = 0.0;

  const auto flush_atom = [&] {
    if (pending_mass > 0.0) atoms.push_back({u_knots.back().x, pending_mass});
    pending_mass = 0.0;
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dH = x.H[i + 1] - x.H[i];
    const double x_end = x.y[i + 1];
    if (x_end - u_knots.back().x < plateau) {
      pending_mass += dH;
      continue;
    }
    flush_atom();
    const double x_start = u_knots.back().x;
    const double value = std::max(0.0, dH) / (x_end - x_start);
    if (!segments.empty() && segments.back().value == value) {
      segments.back().b = x_end;
    } else {
      segments.push_back({x_start, x_end, value});
    }
    u_knots.push_back({x_end, x.U[i + 1]});
  }
  flush_atom();

  std::size_t first = 0;
  std::size_t last = segments.size();
  while (first < last && segments[first].value == 0.0) ++first;
  while (last > first && segments[last - 1].value == 0.0) --last;
  std::vector<Knot> density;
  if (first < last) {
    density.push_back({segments[first].a, 0.0});
    for (std::size_t k = first; k < last; ++k) {
      density.push_back({segments[k].a, segments[k].value});
      density.push_back({segments[k].b, segments[k].value});
    }
    density.push_back({segments[last - 1].b, 0.0});
  }

  EulerianState out{PiecewiseLinear{std::move(u_knots), x.tails.u_minus, x.tails.u_plus},
                    RadonMeasure(std::move(atoms), std::move(density))};
  out.u.validate(kTailTolerance);
  return out;
}

Relabeling::Relabeling(std::vector<Knot> knots) : knots_(std::move(knots)) {
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].x > knots_[i - 1].x) || !(knots_[i].value > knots_[i - 1].value)) {
      throw Error(ErrorKind::NotMonotone, "relabeling must be strictly increasing");
    }
  }
  if (!knots_.empty()) {
    const Knot& a = knots_.front();
    const Knot& b = knots_.back();
    if (std::abs(a.value - a.x) > 1e-12 * std::max(1.0, std::abs(a.x)) ||
        std::abs(b.value - b.x) > 1e-12 * std::max(1.0, std::abs(b.x))) {
      throw Error(ErrorKind::InvalidArgument, "relabeling must equal the identity at its end knots");
    }
  }
}

Relabeling Relabeling::bump(double a, double c, double w, std::size_t samples) {
  if (!(w > 0.0) || samples < 3) throw Error(ErrorKind::InvalidArgument, "bump needs w > 0 and >= 3 samples");
  std::vector<Knot> knots(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double s = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double xi = c + w * s;
    const double q = 1.0 - s * s;
    knots[k] = {xi, xi + a * q * q * q * q};
  }
  knots.front().value = knots.front().x;
  knots.back().value = knots.back().x;
  return Relabeling(std::move(knots));
}

double Relabeling::operator()(double xi) const {
  if (knots_.size() < 2 || xi <= knots_.front().x || xi >= knots_.back().x) return xi;
  const auto hi = std::upper_bound(knots_.begin(), knots_.end(), xi,
                                   [](double v, const Knot& k) { return v < k.x; });
  const auto lo = hi - 1;
  return lo->value + (xi - lo->x) / (hi->x - lo->x) * (hi->value - lo->value);
}

Relabeling Relabeling::inverse() const {
  std::vector<Knot> swapped(knots_.size());
  std::transform(knots_.begin(), knots_.end(), swapped.begin(), [](const Knot& k) { return Knot{k.value, k.x}; });
  return Relabeling(std::move(swapped));
}

double Relabeling::alpha() const {
  double sup = 0.0;
  double dev = 0.0;
  double inv_dev = 0.0;
  for (const Knot& k : knots_) sup = std::max(sup, std::abs(k.value - k.x));
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    const double slope = (knots_[i].value - knots_[i - 1].value) / (knots_[i].x - knots_[i - 1].x);
    dev = std::max(dev, std::abs(slope - 1.0));
    inv_dev = std::max(inv_dev, std::abs(1.0 / slope - 1.0));
  }
  return 2.0 * sup + dev + inv_dev;
}

LagrangianState relabel(const LagrangianState& x, const Relabeling& f) {
  LagrangianState out = x;
  for (std::size_t i = 0; i < x.grid.size(); ++i) {
    const LagrangianPoint p = x.at(f(x.grid.node(i)));
    out.y[i] = p.y;
    out.U[i] = p.U;
    out.H[i] = p.H;
  }
  return out;
}

LagrangianState project_pi(const LagrangianState& x) {
  const std::size_t n = x.grid.size();
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = x.y[i] + x.H[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(z[i + 1] > z[i])) {
      std::ostringstream msg;
      msg << "y + H is not strictly increasing near xi = " << x.grid.node(i);
      throw Error(ErrorKind::NotInvertible, msg.str());
    }
  }
  LagrangianState out = x;
  for (std::size_t i = 0; i < n; ++i) {
    const double nu = x.grid.node(i);
    double y;
    double u;
    if (nu <= z.front()) {
      y = x.y.front() + (nu - z.front());
      u = x.U.front();
    } else if (nu >= z.back()) {
      y = x.y.back() + (nu - z.back());
      u = x.U.back();
    } else {
      const auto hi = std::upper_bound(z.begin(), z.end(), nu);
      const auto k = static_cast<std::size_t>(hi - z.begin()) - 1;
      const double theta = (nu - z[k]) / (z[k + 1] - z[k]);
      y = x.y[k] + theta * (x.y[k + 1] - x.y[k]);
      u = x.U[k] + theta * (x.U[k + 1] - x.U[k]);
    }
    out.y[i] = y;
    out.U[i] = u;
    out.H[i] = nu - y;
  }
  out.tails.zeta_minus = 0.0;
  out.tails.zeta_plus = -x.tails.h_inf;
  return out;
}

}  // namespace hsx
