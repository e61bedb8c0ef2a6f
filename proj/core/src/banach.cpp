#include "hsx/banach.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

Grid::Grid(double xi_min, double xi_max, std::size_t n)
    : Grid(xi_min, xi_max, n >= 2 ? (xi_max - xi_min) / static_cast<double>(n - 1) : 0.0, n) {}

Grid::Grid(double xi_min, double xi_max, double h, std::size_t n)
    : xi_min_(xi_min), xi_max_(xi_max), h_(h), n_(n) {
  if (n_ < 3) throw Error(ErrorKind::InvalidArgument, "grid needs at least 3 nodes");
  if (!(xi_min_ < -1.0 && xi_max_ > 1.0)) {
    std::ostringstream msg;
    msg << "grid [" << xi_min_ << ", " << xi_max_ << "] must contain [-1, 1] in its interior";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw Error(ErrorKind::InvalidArgument, "bad grid spacing");
}

Grid Grid::with_spacing(double xi_min, double spacing, std::size_t n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "grid needs at least 3 nodes");
  return Grid(xi_min, xi_min + static_cast<double>(n - 1) * spacing, spacing, n);
}

Grid Grid::covering(double lo, double hi, std::size_t n) {
  if (n < 3 || !(hi > lo)) throw Error(ErrorKind::InvalidArgument, "cannot cover an empty interval");
  const double cells = static_cast<double>(n - 1);
  int exponent = static_cast<int>(std::ceil(std::log2((hi - lo) / cells)));
  // Guard against log2 rounding in either direction.
  while (std::ldexp(1.0, exponent - 1) * cells >= hi - lo) --exponent;
  while (std::ldexp(1.0, exponent) * cells < hi - lo) ++exponent;
  return with_spacing(lo, std::ldexp(1.0, exponent), n);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = node(i);
  return out;
}

std::size_t Grid::cell_of(double xi) const noexcept {
  const double s = (xi - xi_min_) / h_;
  if (!(s > 0.0)) return 0;
  const auto i = static_cast<std::size_t>(s);
  return std::min(i, n_ - 2);
}

double chi_plus(double xi) noexcept {
  if (xi <= -1.0) return 0.0;
  if (xi >= 1.0) return 1.0;
  const double t = 0.5 * (xi + 1.0);
  return t * t * (3.0 - 2.0 * t);
}

double chi_minus(double xi) noexcept { return 1.0 - chi_plus(xi); }

double chi_plus_derivative(double xi) noexcept {
  if (xi <= -1.0 || xi >= 1.0) return 0.0;
  const double t = 0.5 * (xi + 1.0);
  return 3.0 * t * (1.0 - t);
}

void TailedFunction::check_tails(double tol) const {
  if (samples.empty()) throw Error(ErrorKind::TailMismatch, "function has no samples");
  const double lo = std::abs(samples.front() - tail_minus);
  const double hi = std::abs(samples.back() - tail_plus);
  if (lo > tol || hi > tol) {
    std::ostringstream msg;
    msg << "end samples (" << samples.front() << ", " << samples.back()
        << ") disagree with tails (" << tail_minus << ", " << tail_plus << ")";
    throw Error(ErrorKind::TailMismatch, msg.str());
  }
}

E2Parts e2_decompose(const TailedFunction& f, const Grid& grid) {
  if (f.samples.size() != grid.size()) throw Error(ErrorKind::GridMismatch, "sample count differs from grid size");
  f.check_tails();
  E2Parts parts;
  parts.a = f.tail_plus;
  parts.b = f.tail_minus;
  parts.bar.resize(f.samples.size());
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    const double cp = chi_plus(grid.node(i));
    parts.bar[i] = f.samples[i] - parts.a * cp - parts.b * (1.0 - cp);
  }
  return parts;
}

TailedFunction e2_compose(std::span<const double> bar, double a, double b, const Grid& grid) {
  if (bar.size() != grid.size()) throw Error(ErrorKind::GridMismatch, "sample count differs from grid size");
  TailedFunction f;
  f.tail_plus = a;
  f.tail_minus = b;
  f.samples.resize(bar.size());
  for (std::size_t i = 0; i < bar.size(); ++i) {
    const double cp = chi_plus(grid.node(i));
    f.samples[i] = bar[i] + a * cp + b * (1.0 - cp);
  }
  return f;
}

void central_difference(std::span<const double> values, double h, std::span<double> out) {
  const std::size_t n = values.size();
  if (n < 2 || out.size() != n) throw Error(ErrorKind::InvalidArgument, "central_difference size mismatch");
  out[0] = (values[1] - values[0]) / h;
  out[n - 1] = (values[n - 1] - values[n - 2]) / h;
  const double inv2h = 0.5 / h;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (values[i + 1] - values[i - 1]) * inv2h;
}

std::vector<double> central_difference(std::span<const double> values, double h) {
  std::vector<double> out(values.size());
  central_difference(values, h, out);
  return out;
}

namespace {

double trapezoid_dot(std::span<const double> a, std::span<const double> b, double h) {
  const std::size_t n = a.size();
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) interior += a[i] * b[i];
  return h * (interior + 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]));
}

}  // namespace

double h1_inner(std::span<const double> a, std::span<const double> b, const Grid& grid) {
  if (a.size() != grid.size() || b.size() != grid.size()) {
    throw Error(ErrorKind::GridMismatch, "sample count differs from grid size");
  }
  const double h = grid.spacing();
  const auto da = central_difference(a, h);
  const auto db = central_difference(b, h);
  return trapezoid_dot(a, b, h) + trapezoid_dot(da, db, h);
}

double h1_norm_sq(std::span<const double> bar, const Grid& grid) { return h1_inner(bar, bar, grid); }

void apply_h1(std::span<const double> v, double h, std::span<double> out) {
  const std::size_t n = v.size();
  if (n < 3 || out.size() != n) throw Error(ErrorKind::InvalidArgument, "apply_h1 size mismatch");
  std::vector<double> d(n);
  central_difference(v, h, d);
  // Weighted derivative, then the transpose of the difference operator.
  d[0] *= 0.5 * h;
  d[n - 1] *= 0.5 * h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] *= h;
  for (std::size_t j = 0; j < n; ++j) out[j] = (j == 0 || j + 1 == n ? 0.5 * h : h) * v[j];
  out[0] -= d[0] / h;
  out[1] += d[0] / h;
  out[n - 2] -= d[n - 1] / h;
  out[n - 1] += d[n - 1] / h;
  const double inv2h = 0.5 / h;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i - 1] -= d[i] * inv2h;
    out[i + 1] += d[i] * inv2h;
  }
}

BanachTriple BanachTriple::zero(const Grid& grid) {
  TailedFunction z{std::vector<double>(grid.size(), 0.0), 0.0, 0.0};
  return BanachTriple{grid, z, z, z};
}

namespace {

void check_same_grid(const BanachTriple& x, const BanachTriple& y) {
  if (!(x.grid == y.grid)) throw Error(ErrorKind::GridMismatch, "triples live on different grids");
}

template <typename Op>
void combine(TailedFunction& lhs, const TailedFunction& rhs, Op op) {
  if (lhs.samples.size() != rhs.samples.size()) throw Error(ErrorKind::GridMismatch, "sample count mismatch");
  for (std::size_t i = 0; i < lhs.samples.size(); ++i) lhs.samples[i] = op(lhs.samples[i], rhs.samples[i]);
  lhs.tail_minus = op(lhs.tail_minus, rhs.tail_minus);
  lhs.tail_plus = op(lhs.tail_plus, rhs.tail_plus);
}

void scale(TailedFunction& f, double factor) {
  for (double& s : f.samples) s *= factor;
  f.tail_minus *= factor;
  f.tail_plus *= factor;
}

}  // namespace

BanachTriple& BanachTriple::operator+=(const BanachTriple& other) {
  check_same_grid(*this, other);
  const auto plus = [](double a, double b) { return a + b; };
  combine(zeta, other.zeta, plus);
  combine(u, other.u, plus);
  combine(h, other.h, plus);
  return *this;
}

BanachTriple& BanachTriple::operator-=(const BanachTriple& other) {
  check_same_grid(*this, other);
  const auto minus = [](double a, double b) { return a - b; };
  combine(zeta, other.zeta, minus);
  combine(u, other.u, minus);
  combine(h, other.h, minus);
  return *this;
}

BanachTriple& BanachTriple::operator*=(double factor) {
  scale(zeta, factor);
  scale(u, factor);
  scale(h, factor);
  return *this;
}

BanachTriple operator+(BanachTriple lhs, const BanachTriple& rhs) { return lhs += rhs; }
BanachTriple operator-(BanachTriple lhs, const BanachTriple& rhs) { return lhs -= rhs; }
BanachTriple operator*(double factor, BanachTriple rhs) { return rhs *= factor; }

double b_inner(const BanachTriple& x, const BanachTriple& y) {
  check_same_grid(x, y);
  const Grid& grid = x.grid;
  if (x.h.tail_minus != 0.0 || y.h.tail_minus != 0.0) {
    throw Error(ErrorKind::TailMismatch, "H component must vanish at -inf");
  }
  double total = 0.0;
  const TailedFunction* xs[] = {&x.zeta, &x.u};
  const TailedFunction* ys[] = {&y.zeta, &y.u};
  for (int k = 0; k < 2; ++k) {
    const auto px = e2_decompose(*xs[k], grid);
    const auto py = e2_decompose(*ys[k], grid);
    total += h1_inner(px.bar, py.bar, grid) + px.a * py.a + px.b * py.b;
  }
  // E1: only the +inf tail is a free constant.
  const auto px = e2_decompose(x.h, grid);
  const auto py = e2_decompose(y.h, grid);
  total += h1_inner(px.bar, py.bar, grid) + px.a * py.a;
  return total;
}

double b_norm(const BanachTriple& x) { return std::sqrt(std::max(0.0, b_inner(x, x))); }

}  // namespace hsx
