#pragma once

// Built-in initial data with closed-form conservative solutions.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hsx/banach.hpp"
#include "hsx/measure.hpp"

namespace hsx {

struct Scenario {
  std::string name;
  std::string description;
  EulerianState initial;
  /// Label interval whose kinks must sit on grid nodes; see scenario_grid.
  double span_lo = -2.0;
  double span_hi = 2.0;
  /// u(t, x), when known.
  std::function<double(double, double)> exact_u;
  /// mu(t), when known.
  std::function<RadonMeasure(double)> exact_mu;
  double t_max = 5.0;
};

/// breaking, dirac8, twochar, still.
const std::vector<Scenario>& builtin_scenarios();

/// nullptr for an unknown name.
const Scenario* find_scenario(const std::string& name);

/// Dyadic grid of n nodes starting at span_lo and reaching past span_hi.
Grid scenario_grid(const Scenario& s, std::size_t n);

}  // namespace hsx
