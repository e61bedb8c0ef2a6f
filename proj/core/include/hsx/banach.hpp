#pragma once

// Discrete versions of the spaces E1, E2 and B = E2 x E2 x E1 on a uniform,
// truncated label grid. Functions are constant outside [xi_min, xi_max] and
// are stored as node samples plus their asymptotic (tail) constants.

#include <cstddef>
#include <span>
#include <vector>

namespace hsx {

inline constexpr double kTailTolerance = 1e-9;

class Grid {
 public:
  /// Uniform grid with `n` nodes on [xi_min, xi_max]. Requires
  /// xi_min < -1 < 1 < xi_max and n >= 3.
  Grid(double xi_min, double xi_max, std::size_t n);

  /// Grid starting at `xi_min` with the given spacing; xi_max is derived.
  static Grid with_spacing(double xi_min, double spacing, std::size_t n);

  /// Grid of `n` nodes starting at `lo` whose spacing is the finest power of
  /// two that still reaches `hi`. Integer and dyadic points in [lo, hi] are
  /// then grid nodes exactly, and doubling `n` halves the spacing.
  static Grid covering(double lo, double hi, std::size_t n);

  double xi_min() const noexcept { return xi_min_; }
  double xi_max() const noexcept { return xi_max_; }
  double spacing() const noexcept { return h_; }
  std::size_t size() const noexcept { return n_; }

  double node(std::size_t i) const noexcept {
    return xi_min_ + static_cast<double>(i) * h_;
  }
  std::vector<double> nodes() const;

  /// Index of the cell [node(i), node(i+1)] containing xi, clamped to the grid.
  std::size_t cell_of(double xi) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(double xi_min, double xi_max, double h, std::size_t n);

  double xi_min_;
  double xi_max_;
  double h_;
  std::size_t n_;
};

/// C1 smoothstep partition of unity: 0 on (-inf,-1], 1 on [1,inf).
double chi_plus(double xi) noexcept;
double chi_minus(double xi) noexcept;
double chi_plus_derivative(double xi) noexcept;

struct TailedFunction {
  std::vector<double> samples;
  double tail_minus = 0.0;
  double tail_plus = 0.0;

  /// Throws TailMismatch when an end sample disagrees with its tail.
  void check_tails(double tol = kTailTolerance) const;
};

/// f = bar + a chi+ + b chi-, with a the value at +inf and b the one at -inf.
struct E2Parts {
  std::vector<double> bar;
  double a = 0.0;
  double b = 0.0;
};

E2Parts e2_decompose(const TailedFunction& f, const Grid& grid);
TailedFunction e2_compose(std::span<const double> bar, double a, double b, const Grid& grid);

/// Derivative by central differences, one-sided at both ends.
std::vector<double> central_difference(std::span<const double> values, double h);
void central_difference(std::span<const double> values, double h, std::span<double> out);

/// Trapezoid quadrature of bar^2 plus that of the squared central difference.
double h1_norm_sq(std::span<const double> bar, const Grid& grid);
double h1_inner(std::span<const double> a, std::span<const double> b, const Grid& grid);

/// out = K v where v^T K w is the discrete H1 inner product. K is pentadiagonal.
void apply_h1(std::span<const double> v, double h, std::span<double> out);

/// (zeta, U, H) in E2 x E2 x E1 on a common grid. The H component has a zero
/// tail at -inf.
struct BanachTriple {
  Grid grid;
  TailedFunction zeta;
  TailedFunction u;
  TailedFunction h;

  static BanachTriple zero(const Grid& grid);

  BanachTriple& operator+=(const BanachTriple& other);
  BanachTriple& operator-=(const BanachTriple& other);
  BanachTriple& operator*=(double factor);
};

BanachTriple operator+(BanachTriple lhs, const BanachTriple& rhs);
BanachTriple operator-(BanachTriple lhs, const BanachTriple& rhs);
BanachTriple operator*(double factor, BanachTriple rhs);

/// Sum over the three components of the H1 inner products of the bars and of
/// the products of tail constants. Throws GridMismatch for different grids.
double b_inner(const BanachTriple& x, const BanachTriple& y);
double b_norm(const BanachTriple& x);

}  // namespace hsx
