#include "hsx/galerkin.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

std::array<std::vector<double>, 3> nodal_derivative(const LagrangianState& x) {
  const double h = x.grid.spacing();
  return {central_difference(x.y, h), central_difference(x.U, h), central_difference(x.H, h)};
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Bands of the (pentadiagonal) H1 Gram matrix, read off by applying it to
// combs of period 5.
std::array<std::vector<double>, 3> h1_bands(std::size_t n, double h) {
  std::array<std::vector<double>, 3> bands{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                                           std::vector<double>(n, 0.0)};
  std::vector<double> comb(n);
  std::vector<double> image(n);
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t j = 0; j < n; ++j) comb[j] = (j % 5 == r) ? 1.0 : 0.0;
    apply_h1(comb, h, image);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t o = 0; o < 3 && o <= i; ++o) {
        if ((i - o) % 5 == r) bands[o][i] = image[i];
      }
    }
  }
  return bands;
}

}  // namespace

GalerkinSystem::Banded GalerkinSystem::cholesky(const Banded& a) {
  const std::size_t m = a.d0.size();
  Banded l{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < m; ++i) {
    if (i >= 2) l.d2[i] = a.d2[i] / l.d0[i - 2];
    if (i >= 1) l.d1[i] = (a.d1[i] - (i >= 2 ? l.d2[i] * l.d1[i - 1] : 0.0)) / l.d0[i - 1];
    const double pivot = a.d0[i] - l.d1[i] * l.d1[i] - l.d2[i] * l.d2[i];
    if (!(pivot > 64.0 * std::numeric_limits<double>::epsilon() * std::abs(a.d0[i])) || !std::isfinite(pivot)) {
      std::ostringstream msg;
      msg << "Galerkin matrix is not positive definite (pivot " << pivot << " at row " << i << ")";
      throw Error(ErrorKind::SingularSystem, msg.str());
    }
    l.d0[i] = std::sqrt(pivot);
  }
  return l;
}

void GalerkinSystem::banded_solve(const Banded& l, std::span<double> x) {
  const std::size_t m = l.d0.size();
  for (std::size_t i = 0; i < m; ++i) {
    double s = x[i];
    if (i >= 1) s -= l.d1[i] * x[i - 1];
    if (i >= 2) s -= l.d2[i] * x[i - 2];
    x[i] = s / l.d0[i];
  }
  for (std::size_t k = m; k-- > 0;) {
    double s = x[k];
    if (k + 1 < m) s -= l.d1[k + 1] * x[k + 1];
    if (k + 2 < m) s -= l.d2[k + 2] * x[k + 2];
    x[k] = s / l.d0[k];
  }
}

void GalerkinSystem::banded_apply(const Banded& a, std::span<const double> x, std::span<double> out) {
  const std::size_t m = a.d0.size();
  for (std::size_t i = 0; i < m; ++i) {
    double s = a.d0[i] * x[i];
    if (i >= 1) s += a.d1[i] * x[i - 1];
    if (i >= 2) s += a.d2[i] * x[i - 2];
    if (i + 1 < m) s += a.d1[i + 1] * x[i + 1];
    if (i + 2 < m) s += a.d2[i + 2] * x[i + 2];
    out[i] = s;
  }
}

GalerkinSystem::GalerkinSystem(const LagrangianState& x) : grid_(x.grid), m_(x.grid.size() - 2) {
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  dx_ = nodal_derivative(x);
  for (std::size_t k = 0; k < 3; ++k) {
    tau_plus_[k] = dx_[k].back();
    tau_minus_[k] = k == 2 ? 0.0 : dx_[k].front();
  }

  const auto bands = h1_bands(n, h);
  k_interior_ = Banded{std::vector<double>(m_), std::vector<double>(m_, 0.0), std::vector<double>(m_, 0.0)};
  a_interior_ = Banded{std::vector<double>(m_, 0.0), std::vector<double>(m_, 0.0), std::vector<double>(m_, 0.0)};
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t j = r + 1;
    k_interior_.d0[r] = bands[0][j];
    if (r >= 1) k_interior_.d1[r] = bands[1][j];
    if (r >= 2) k_interior_.d2[r] = bands[2][j];
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& d = dx_[k];
      a_interior_.d0[r] += d[j] * d[j] * bands[0][j];
      if (r >= 1) a_interior_.d1[r] += d[j] * d[j - 1] * bands[1][j];
      if (r >= 2) a_interior_.d2[r] += d[j] * d[j - 2] * bands[2][j];
    }
  }

  b_plus_.assign(m_, 0.0);
  b_minus_.assign(m_, 0.0);
  c_pp_ = c_pm_ = c_mm_ = 0.0;
  std::vector<double> kw_plus(n);
  std::vector<double> kw_minus(n);
  for (std::size_t k = 0; k < 3; ++k) {
    w_plus_[k].resize(n);
    w_minus_[k].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double cp = chi_plus(grid_.node(i));
      w_plus_[k][i] = (dx_[k][i] - tau_plus_[k]) * cp;
      w_minus_[k][i] = (dx_[k][i] - tau_minus_[k]) * (1.0 - cp);
    }
    apply_h1(w_plus_[k], h, kw_plus);
    apply_h1(w_minus_[k], h, kw_minus);
    for (std::size_t r = 0; r < m_; ++r) {
      b_plus_[r] += dx_[k][r + 1] * kw_plus[r + 1];
      b_minus_[r] += dx_[k][r + 1] * kw_minus[r + 1];
    }
    c_pp_ += dot(w_plus_[k], kw_plus) + tau_plus_[k] * tau_plus_[k];
    c_pm_ += dot(w_plus_[k], kw_minus);
    c_mm_ += dot(w_minus_[k], kw_minus) + tau_minus_[k] * tau_minus_[k];
  }

  k_factor_ = cholesky(k_interior_);
  a_factor_ = cholesky(a_interior_);
  y_plus_ = b_plus_;
  y_minus_ = b_minus_;
  banded_solve(a_factor_, y_plus_);
  banded_solve(a_factor_, y_minus_);
  const double s00 = c_pp_ - dot(b_plus_, y_plus_);
  const double s10 = c_pm_ - dot(b_minus_, y_plus_);
  const double s11 = c_mm_ - dot(b_minus_, y_minus_);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon();
  if (!(s00 > floor * c_pp_)) throw Error(ErrorKind::SingularSystem, "Galerkin Schur complement is not positive");
  s00_ = std::sqrt(s00);
  s10_ = s10 / s00_;
  const double p = s11 - s10_ * s10_;
  if (!(p > floor * c_mm_)) throw Error(ErrorKind::SingularSystem, "Galerkin Schur complement is not positive");
  s11_ = std::sqrt(p);
}

std::vector<double> GalerkinSystem::rhs(const BanachTriple& v) const {
  if (!(v.grid == grid_)) throw Error(ErrorKind::GridMismatch, "tangent lives on a different grid");
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  std::vector<double> out(m_ + 2, 0.0);
  std::vector<double> kv(n);
  const TailedFunction* comps[] = {&v.zeta, &v.u, &v.h};
  for (std::size_t k = 0; k < 3; ++k) {
    const E2Parts parts = e2_decompose(*comps[k], grid_);
    apply_h1(parts.bar, h, kv);
    for (std::size_t r = 0; r < m_; ++r) out[r] += dx_[k][r + 1] * kv[r + 1];
    out[m_] += dot(w_plus_[k], kv) + parts.a * tau_plus_[k];
    out[m_ + 1] += dot(w_minus_[k], kv) + (k == 2 ? 0.0 : parts.b * tau_minus_[k]);
  }
  return out;
}

std::vector<double> GalerkinSystem::solve(std::span<const double> rhs) const {
  if (rhs.size() != m_ + 2) throw Error(ErrorKind::InvalidArgument, "rhs has the wrong dimension");
  std::vector<double> x(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(m_));
  banded_solve(a_factor_, x);
  // Border unknowns from the Schur complement S = C - B^T A_II^{-1} B.
  double r0 = rhs[m_] - dot(b_plus_, x);
  double r1 = rhs[m_ + 1] - dot(b_minus_, x);
  r0 /= s00_;
  r1 = (r1 - s10_ * r0) / s11_;
  const double c_minus = r1 / s11_;
  const double c_plus = (r0 - s10_ * c_minus) / s00_;
  for (std::size_t r = 0; r < m_; ++r) x[r] -= y_plus_[r] * c_plus + y_minus_[r] * c_minus;
  x.push_back(c_plus);
  x.push_back(c_minus);
  return x;
}

TailedFunction GalerkinSystem::reconstruct(std::span<const double> coeffs) const {
  if (coeffs.size() != m_ + 2) throw Error(ErrorKind::InvalidArgument, "coefficient vector has the wrong dimension");
  const std::size_t n = grid_.size();
  const double c_plus = coeffs[m_];
  const double c_minus = coeffs[m_ + 1];
  TailedFunction g{std::vector<double>(n), c_minus, c_plus};
  for (std::size_t i = 0; i < n; ++i) {
    const double cp = chi_plus(grid_.node(i));
    const double hat = (i == 0 || i + 1 == n) ? 0.0 : coeffs[i - 1];
    g.samples[i] = hat + c_plus * cp + c_minus * (1.0 - cp);
  }
  return g;
}

BanachTriple GalerkinSystem::multiply(const TailedFunction& g) const {
  const std::size_t n = grid_.size();
  if (g.samples.size() != n) throw Error(ErrorKind::GridMismatch, "multiplier has the wrong length");
  BanachTriple out = BanachTriple::zero(grid_);
  TailedFunction* comps[] = {&out.zeta, &out.u, &out.h};
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < n; ++i) comps[k]->samples[i] = g.samples[i] * dx_[k][i];
    comps[k]->tail_plus = g.tail_plus * tau_plus_[k];
    comps[k]->tail_minus = g.tail_minus * tau_minus_[k];
  }
  return out;
}

void GalerkinSystem::apply(std::span<const double> c, std::span<double> out) const {
  if (c.size() != m_ + 2 || out.size() != m_ + 2) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  banded_apply(a_interior_, c.first(m_), out.first(m_));
  const double cp = c[m_];
  const double cm = c[m_ + 1];
  for (std::size_t r = 0; r < m_; ++r) out[r] += b_plus_[r] * cp + b_minus_[r] * cm;
  out[m_] = dot(b_plus_, c.first(m_)) + c_pp_ * cp + c_pm_ * cm;
  out[m_ + 1] = dot(b_minus_, c.first(m_)) + c_pm_ * cp + c_mm_ * cm;
}

void GalerkinSystem::apply_gram(std::span<const double> c, std::span<double> out) const {
  if (c.size() != m_ + 2 || out.size() != m_ + 2) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  banded_apply(k_interior_, c.first(m_), out.first(m_));
  out[m_] = c[m_];
  out[m_ + 1] = c[m_ + 1];
}

std::vector<double> GalerkinSystem::solve_gram(std::span<const double> r) const {
  if (r.size() != m_ + 2) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  std::vector<double> x(r.begin(), r.end());
  banded_solve(k_factor_, std::span<double>(x).first(m_));
  return x;
}

namespace {

template <typename Apply>
std::vector<double> densify(std::size_t dim, Apply apply) {
  std::vector<double> dense(dim * dim);
  std::vector<double> e(dim, 0.0);
  std::vector<double> col(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    apply(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < dim; ++i) dense[i * dim + j] = col[i];
  }
  return dense;
}

}  // namespace

std::vector<double> GalerkinSystem::dense_matrix() const {
  return densify(dimension(), [this](std::span<const double> c, std::span<double> out) { apply(c, out); });
}

std::vector<double> GalerkinSystem::dense_gram() const {
  return densify(dimension(), [this](std::span<const double> c, std::span<double> out) { apply_gram(c, out); });
}

}  // namespace hsx
