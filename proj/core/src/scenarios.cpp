#include "hsx/scenarios.hpp"

#include <cmath>

namespace hsx {

namespace {

// Profile with u = 0 to the left; the full-line solution is
// ubar(t, x + t^2/8) - t/4.
double breaking_ubar(double t, double z) {
  if (z <= 0.0) return 0.0;
  const double edge = 0.25 * (t - 2.0) * (t - 2.0);
  if (z < edge) return 2.0 * z / (t - 2.0);
  return 0.5 * (t - 2.0);
}

Scenario breaking() {
  Scenario s;
  s.name = "breaking";
  s.description = "u0 = -x on [0,1], -1 beyond; breaks at t = 2 with all energy in one atom";
  s.initial = EulerianState{PiecewiseLinear{{{0.0, 0.0}, {1.0, -1.0}}, 0.0, -1.0}, RadonMeasure::uniform(0.0, 1.0, 1.0)};
  s.span_lo = -2.0;
  s.span_hi = 2.5;
  s.exact_u = [](double t, double x) { return breaking_ubar(t, x + t * t / 8.0) - t / 4.0; };
  s.exact_mu = [](double t) {
    const double shift = -t * t / 8.0;
    if (t == 2.0) return RadonMeasure::dirac(shift, 1.0);
    const double edge = 0.25 * (t - 2.0) * (t - 2.0);
    return RadonMeasure::uniform(shift, shift + edge, 4.0 / ((t - 2.0) * (t - 2.0)));
  };
  return s;
}

Scenario dirac8() {
  Scenario s;
  s.name = "dirac8";
  s.description = "u0 = 0 with an atom of mass 8 at the origin; conservative fan";
  s.initial = EulerianState{PiecewiseLinear::constant(0.0), RadonMeasure::dirac(0.0, 8.0)};
  s.span_lo = -2.0;
  s.span_hi = 10.0;
  s.exact_u = [](double t, double x) {
    if (t == 0.0) return 0.0;
    const double edge = t * t;
    if (x <= -edge) return -2.0 * t;
    if (x >= edge) return 2.0 * t;
    return 2.0 * x / t;
  };
  s.exact_mu = [](double t) {
    if (t == 0.0) return RadonMeasure::dirac(0.0, 8.0);
    return RadonMeasure::uniform(-t * t, t * t, 4.0 / (t * t));
  };
  return s;
}

Scenario twochar() {
  Scenario s;
  s.name = "twochar";
  s.description = "unit atom at the origin; u linear between the characteristics x = -+t^2/8";
  s.initial = EulerianState{PiecewiseLinear::constant(0.0), RadonMeasure::dirac(0.0, 1.0)};
  s.span_lo = -2.0;
  s.span_hi = 3.0;
  s.exact_u = [](double t, double x) {
    if (t == 0.0) return 0.0;
    const double edge = t * t / 8.0;
    if (x <= -edge) return -t / 4.0;
    if (x >= edge) return t / 4.0;
    return 2.0 * x / t;
  };
  s.exact_mu = [](double t) {
    if (t == 0.0) return RadonMeasure::dirac(0.0, 1.0);
    const double edge = t * t / 8.0;
    return RadonMeasure::uniform(-edge, edge, 4.0 / (t * t));
  };
  return s;
}

Scenario still() {
  Scenario s;
  s.name = "still";
  s.description = "u = 0, no energy";
  s.initial = EulerianState{PiecewiseLinear::constant(0.0), RadonMeasure()};
  s.span_lo = -2.0;
  s.span_hi = 2.0;
  s.exact_u = [](double, double) { return 0.0; };
  s.exact_mu = [](double) { return RadonMeasure(); };
  return s;
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> all{breaking(), dirac8(), twochar(), still()};
  return all;
}

const Scenario* find_scenario(const std::string& name) {
  for (const Scenario& s : builtin_scenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

Grid scenario_grid(const Scenario& s, std::size_t n) { return Grid::covering(s.span_lo, s.span_hi, n); }

}  // namespace hsx
