#pragma once

// Test-side reference implementations. Written from the equations directly,
// sharing no code paths with the library beyond its data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hsx/measure.hpp"
#include "hsx/state.hpp"

namespace oracle {

// Breaking data u0 = -x on [0, 1]: one-sided closed form, moved to the
// full-line frame by x -> x + t^2/8 and a velocity shift of -t/4.
inline double breaking_u(double t, double x) {
  const double xb = x + t * t / 8.0;
  const double w = (t - 2.0) * (t - 2.0) / 4.0;
  double ub;
  if (xb <= 0.0) {
    ub = 0.0;
  } else if (t == 2.0 || xb >= w) {
    ub = 0.5 * (t - 2.0);
  } else {
    ub = 2.0 * xb / (t - 2.0);
  }
  return ub - t / 4.0;
}

// Eight units of energy released from a Dirac mass at the origin.
inline double dirac8_u(double t, double x) {
  if (x <= -t * t) return -2.0 * t;
  if (x >= t * t) return 2.0 * t;
  return 2.0 * x / t;
}

struct NodeState {
  std::vector<long double> y, U, H;
};

// Closed-form characteristics in extended precision.
inline NodeState evolve(const hsx::LagrangianState& x, double t) {
  const long double tt = t;
  const long double hinf = x.tails.h_inf;
  NodeState out;
  for (std::size_t i = 0; i < x.y.size(); ++i) {
    const long double H = x.H[i];
    const long double acc = H / 2 - hinf / 4;
    out.y.push_back(x.y[i] + x.U[i] * tt + acc * tt * tt / 2);
    out.U.push_back(x.U[i] + acc * tt);
    out.H.push_back(H);
  }
  return out;
}

// mu((-inf, x)) straight from atoms and density knots (trapezoids).
inline long double mass_below(const hsx::RadonMeasure& mu, double x) {
  long double m = 0;
  for (const hsx::Atom& a : mu.atoms()) {
    if (a.position < x) m += a.mass;
  }
  const auto& k = mu.density_knots();
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    const double a = k[i].x;
    const double b = k[i + 1].x;
    if (!(b > a) || x <= a) continue;
    const double e = std::min(x, b);
    const long double va = k[i].value;
    const long double vb = k[i + 1].value;
    const long double ve = va + (vb - va) * (e - a) / (b - a);
    m += (va + ve) * (e - a) / 2;
  }
  return m;
}

// Generalized inverse y(xi) = sup{x : x + mu((-inf, x)) <= xi} by bisection.
inline double lagrangian_y(const hsx::RadonMeasure& mu, double xi, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid + mass_below(mu, mid) <= xi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

inline double max_node_distance(const hsx::LagrangianState& a, const hsx::LagrangianState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.y.size(); ++i) {
    d = std::max({d, std::abs(a.y[i] - b.y[i]), std::abs(a.U[i] - b.U[i]), std::abs(a.H[i] - b.H[i])});
  }
  return d;
}

}  // namespace oracle
