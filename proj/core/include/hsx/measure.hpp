#pragma once

// Eulerian side: piecewise-linear velocities, atomic-plus-density energy
// measures, and the pair (u, mu) with mu_ac = u_x^2 dx.

#include <optional>
#include <utility>
#include <vector>

namespace hsx {

struct Knot {
  double x = 0.0;
  double value = 0.0;

  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Piecewise-linear function through strictly increasing knots, extended by
/// the constants tail_minus / tail_plus. With no knots it is the constant
/// tail_minus (which must then equal tail_plus).
struct PiecewiseLinear {
  std::vector<Knot> knots;
  double tail_minus = 0.0;
  double tail_plus = 0.0;

  static PiecewiseLinear constant(double value);

  double operator()(double x) const;
  /// Slope on the open interval (a, b); the interval must not straddle a knot.
  double slope_between(double a, double b) const;
  /// Throws NotInD for unsorted knots or tails that disagree with end knots.
  void validate(double tol = 1e-12) const;
};

struct Atom {
  double position = 0.0;
  double mass = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite measure = atoms + piecewise-linear density. Density knots are sorted
/// by x; two knots may share an x to encode a jump. The density vanishes at
/// the first and last knot and outside them.
class RadonMeasure {
 public:
  RadonMeasure() = default;
  RadonMeasure(std::vector<Atom> atoms, std::vector<Knot> density_knots);

  static RadonMeasure dirac(double position, double mass);
  /// Density `value` on [a, b], zero elsewhere.
  static RadonMeasure uniform(double a, double b, double value);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<Knot>& density_knots() const noexcept { return density_; }

  /// mu((-inf, x)), atoms at x excluded.
  double mass_below(double x) const;
  double total_mass() const;
  double atomic_mass() const;

  double density_left(double x) const;
  double density_right(double x) const;

  /// Smallest closed interval containing every atom and density knot.
  std::optional<std::pair<double, double>> hull() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> atom_prefix_{0.0};  // atom_prefix_[k] = mass of atoms_[0..k)
  std::vector<Knot> density_;
  std::vector<double> density_cumulative_;  // integral up to density_[k].x
};

/// x + mu((-inf, x)).
double cumulative_plus_id(const RadonMeasure& mu, double x);

struct EulerianState {
  PiecewiseLinear u;
  RadonMeasure mu;

  /// Smallest interval outside of which u is constant and mu has no mass.
  std::optional<std::pair<double, double>> active_hull() const;
};

/// Largest violation of density == (u_x)^2 over the common breakpoint
/// partition, relative to max(1, u_x^2).
double compatibility_defect(const EulerianState& state);

struct EulerianGap {
  double u = 0.0;           // sup |u_a - u_b|
  double cumulative = 0.0;  // sup |mu_a((-inf, x)) - mu_b((-inf, x))|, both one-sided limits
};

/// Exact for u (checked at every knot); the cumulative functions are compared
/// at all breakpoints and segment midpoints.
EulerianGap eulerian_gap(const EulerianState& a, const EulerianState& b);

/// Throws NotInD when the state is malformed or mu_ac != u_x^2 dx.
void check_in_D(const EulerianState& state, double tol = 1e-9);

}  // namespace hsx
