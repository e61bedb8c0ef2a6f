#pragma once

// Galerkin discretization of <g X_xi, h X_xi>_B = <V, h X_xi>_B. The trial
// space holds the interior nodal hats and the tail functions chi+, chi-; the
// end hats are left out since chi+- already carry the end values. Unknowns
// are ordered as (hats at nodes 1..n-2, c_plus, c_minus).

#include <array>
#include <span>
#include <vector>

#include "hsx/banach.hpp"
#include "hsx/state.hpp"

namespace hsx {

/// X_xi at the nodes by central differences (one-sided at the ends).
std::array<std::vector<double>, 3> nodal_derivative(const LagrangianState& x);

class GalerkinSystem {
 public:
  /// Assembles and factorizes; throws SingularSystem on a non-positive pivot.
  explicit GalerkinSystem(const LagrangianState& x);

  std::size_t dimension() const noexcept { return m_ + 2; }
  const Grid& grid() const noexcept { return grid_; }

  std::vector<double> rhs(const BanachTriple& v) const;
  std::vector<double> solve(std::span<const double> rhs) const;

  TailedFunction reconstruct(std::span<const double> coeffs) const;
  /// g X_xi; its tails are g's tails times the end values of X_xi.
  BanachTriple multiply(const TailedFunction& g) const;

  /// out = A c.
  void apply(std::span<const double> c, std::span<double> out) const;
  /// out = E c, the Gram matrix of the discrete E2 norm on the trial space.
  void apply_gram(std::span<const double> c, std::span<double> out) const;
  /// Solves E c = r.
  std::vector<double> solve_gram(std::span<const double> r) const;

  /// Dense row-major copies, meant for small systems.
  std::vector<double> dense_matrix() const;
  std::vector<double> dense_gram() const;

 private:
  struct Banded {
    std::vector<double> d0, d1, d2;  // A[i][i], A[i][i-1], A[i][i-2]
  };
  static Banded cholesky(const Banded& a);
  static void banded_solve(const Banded& l, std::span<double> x);
  static void banded_apply(const Banded& a, std::span<const double> x, std::span<double> out);

  Grid grid_;
  std::size_t m_;  // interior hat count
  std::array<std::vector<double>, 3> dx_;
  std::array<double, 3> tau_plus_{};
  std::array<double, 3> tau_minus_{};
  std::array<std::vector<double>, 3> w_plus_;   // (X_xi - tau+) chi+
  std::array<std::vector<double>, 3> w_minus_;  // (X_xi - tau-) chi-
  Banded k_interior_;
  Banded k_factor_;
  Banded a_interior_;
  Banded a_factor_;
  std::vector<double> b_plus_, b_minus_;
  double c_pp_ = 0.0, c_pm_ = 0.0, c_mm_ = 0.0;
  std::vector<double> y_plus_, y_minus_;  // A_II^{-1} b_plus, A_II^{-1} b_minus
  double s00_ = 0.0, s10_ = 0.0, s11_ = 0.0;  // Cholesky of the Schur complement
};

}  // namespace hsx
