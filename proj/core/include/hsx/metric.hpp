#pragma once

// Relabeling-invariant seminorm, path lengths and certified upper bounds on
// the distance between states of G0, plus the Lipschitz certificate for the
// projected flow and a coercivity diagnostic for the Galerkin form.

#include <cstddef>
#include <vector>

#include "hsx/banach.hpp"
#include "hsx/galerkin.hpp"
#include "hsx/measure.hpp"
#include "hsx/state.hpp"

namespace hsx {

struct GSolution {
  TailedFunction g;
  double residual_norm = 0.0;
};

/// Minimizes ||V - g X_xi||_B over the Galerkin trial space.
GSolution solve_g(const LagrangianState& x, const BanachTriple& v);

/// ||V - g(X, V) X_xi||_B.
double seminorm(const LagrangianState& x, const BanachTriple& v);

/// Nodes and weights of the q-point Gauss-Legendre rule on [0, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(std::size_t q);

/// (1 - s) a + s b, tails included.
LagrangianState interpolate(const LagrangianState& a, const LagrangianState& b, double s);

/// Controls joined by straight segments.
struct CurvePath {
  std::vector<LagrangianState> controls;
  std::size_t quadrature = 3;
};

double segment_length(const LagrangianState& a, const LagrangianState& b, const Quadrature& rule);

/// Throws NotInG0 when a control leaves G0.
double path_length(const CurvePath& path);

/// Clamps every cell slope into the cone y'^2 + H'^2 + 2U'^2 <= 1 of the
/// slice y + H = id and rebuilds the state from the left end.
LagrangianState project_g0(const LagrangianState& x);

struct DistanceBudget {
  std::size_t controls = 0;  // interior controls inserted, one per stage
  std::size_t quadrature = 3;
  std::size_t sweeps = 1;  // optimization passes per stage
};

struct DistanceResult {
  double d_upper = 0.0;
  double straight = 0.0;            // stage 0, the straight segment
  std::vector<double> stage_values;  // running minimum after each stage
  CurvePath path;
};

/// Upper bound on d(X0, X1): the straight segment, then one more control per
/// stage placed on the longest segment and optimized by line searches with a
/// projection back onto G0. Nonincreasing in the budget.
DistanceResult distance_upper(const LagrangianState& x0, const LagrangianState& x1, const DistanceBudget& budget = {});

double distance_eulerian(const EulerianState& s0, const EulerianState& s1, const Grid& grid,
                         const DistanceBudget& budget = {});

struct LipschitzRow {
  std::size_t pair_id = 0;
  double t = 0.0;
  double d0 = 0.0;
  double dt = 0.0;
  double ratio = 0.0;
  bool skipped = false;
};

struct LipschitzCertificate {
  std::vector<LipschitzRow> rows;
  double fitted_C = 0.0;  // smallest C with ratio <= exp(C t) on every row
};

/// Distances between Pi(S_t X0) and Pi(S_t X1) relative to t = 0.
LipschitzCertificate lipschitz_certificate(const std::vector<std::pair<LagrangianState, LagrangianState>>& pairs,
                                           const std::vector<double>& times, const DistanceBudget& budget = {});

struct CoercivityReport {
  double lambda_min = 0.0;     // smallest eigenvalue of A relative to the E2 Gram matrix
  double state_norm = 0.0;     // B-norm of X plus the H1 norms of X_xi
  double inv_slope_sup = 0.0;  // max 1 / (y' + H')
  std::size_t iterations = 0;
};

CoercivityReport coercivity_diagnostic(const LagrangianState& x);

}  // namespace hsx
