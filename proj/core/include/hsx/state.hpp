#pragma once

// Lagrangian states X = (y, U, H) on a label grid, their class predicates,
// the maps L (Eulerian -> Lagrangian) and M (Lagrangian -> Eulerian),
// relabelings and the projection onto the slice y + H = id.

#include <vector>

#include "hsx/banach.hpp"
#include "hsx/measure.hpp"

namespace hsx {

inline constexpr double kTolMono = 1e-12;
inline constexpr double kTolRel = 1e-8;
inline constexpr double kTolIdentity = 1e-10;
inline constexpr double kPlateauFactor = 1e-10;

/// Asymptotic constants; H at -inf is always 0.
struct Tails {
  double zeta_minus = 0.0;
  double zeta_plus = 0.0;
  double u_minus = 0.0;
  double u_plus = 0.0;
  double h_inf = 0.0;

  friend bool operator==(const Tails&, const Tails&) = default;
};

struct LagrangianPoint {
  double y = 0.0;
  double U = 0.0;
  double H = 0.0;
};

struct LagrangianState {
  Grid grid;
  std::vector<double> y;
  std::vector<double> U;
  std::vector<double> H;
  Tails tails;

  /// (id, 0, 0).
  static LagrangianState identity(const Grid& grid);
  static LagrangianState from_triple(const BanachTriple& x);

  /// (zeta, U, H) with zeta = y - id.
  BanachTriple to_triple() const;

  /// Throws GridMismatch / TailMismatch when arrays and tails disagree.
  void check_consistent(double tol = kTailTolerance) const;

  /// Linear interpolation between nodes, tail extension outside the grid.
  LagrangianPoint at(double xi) const;

  /// Largest absolute value over all node data; sets the rounding scale.
  double magnitude() const;
};

/// Forward differences per cell: n - 1 entries each.
struct CellSlopes {
  std::vector<double> y;
  std::vector<double> U;
  std::vector<double> H;
};

CellSlopes cell_slopes(const LagrangianState& x);

/// Round-off allowance for cell slopes of a state with values of size
/// `magnitude` on a grid of spacing `h`.
double slope_rounding(double magnitude, double h);

struct ClassReport {
  bool in_F = false;
  bool in_G = false;
  bool in_F0 = false;
  bool in_G0 = false;
  double alpha_estimate = 0.0;
  double c_estimate = 0.0;
  double identity_defect = 0.0;  // max |y + H - id|
  double f_defect = 0.0;         // max |y'H' - U'^2| / (y' + H')^2
  double g_defect = 0.0;         // max (U'^2 - y'H')_+ / (y' + H')^2
};

ClassReport validate(const LagrangianState& x);

/// L: the generalized inverse of x -> x + mu((-inf, x)) at every node.
LagrangianState to_lagrangian(const EulerianState& state, const Grid& grid);

enum class Membership { StrictF, RelaxedG };

/// M: u through the points (y, U), mu the push-forward of H_xi dxi. Plateaus
/// of y become atoms. StrictF demands X in F; RelaxedG only X in G, which
/// admits states whose kinks do not sit on grid nodes.
EulerianState to_eulerian(const LagrangianState& x, Membership membership = Membership::StrictF);

/// Strictly increasing homeomorphism, identity outside its knot range.
class Relabeling {
 public:
  Relabeling() = default;
  explicit Relabeling(std::vector<Knot> knots);

  /// f(xi) = xi + a (1 - s^2)^4 with s = (xi - c)/w, sampled at `samples` knots.
  static Relabeling bump(double a, double c, double w, std::size_t samples = 4097);

  double operator()(double xi) const;
  Relabeling inverse() const;
  const std::vector<Knot>& knots() const noexcept { return knots_; }

  /// ||f - id||_{W1,inf} + ||f^-1 - id||_{W1,inf}.
  double alpha() const;

 private:
  std::vector<Knot> knots_;
};

/// X o f evaluated at the nodes.
LagrangianState relabel(const LagrangianState& x, const Relabeling& f);

/// X o (y + H)^{-1}: lands in the slice y + H = id.
LagrangianState project_pi(const LagrangianState& x);

}  // namespace hsx
