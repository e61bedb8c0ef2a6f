#include <gtest/gtest.h>

#include <cmath>

#include "hsx/banach.hpp"
#include "hsx/errors.hpp"

using namespace hsx;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no hsx::Error thrown";
  return ErrorKind::InvalidArgument;
}

TailedFunction sampled(const Grid& g, const std::function<double(double)>& f, double lo, double hi) {
  TailedFunction out{{}, lo, hi};
  for (double xi : g.nodes()) out.samples.push_back(f(xi));
  return out;
}

}  // namespace

TEST(Grid, RejectsNarrowOrTinyGrids) {
  EXPECT_EQ(kind_of([] { Grid(-0.5, 2.0, 10); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { Grid(-2.0, 2.0, 2); }), ErrorKind::InvalidArgument);
  EXPECT_NO_THROW(Grid(-2.0, 2.0, 3));
}

TEST(Grid, CoveringIsDyadicAndReachesTheEnd) {
  for (std::size_t n : {17u, 100u, 1024u, 4096u}) {
    const Grid g = Grid::covering(-2.0, 2.5, n);
    const double h = g.spacing();
    EXPECT_EQ(std::ldexp(1.0, std::ilogb(h)), h);
    EXPECT_GE(g.xi_max(), 2.5);
    EXPECT_LT(g.xi_min() + 0.5 * static_cast<double>(n - 1) * h, 2.5);
    EXPECT_EQ(g.node(static_cast<std::size_t>(2.0 / h)), 0.0);
  }
  EXPECT_EQ(Grid::covering(-2.0, 2.0, 2049).spacing() * 2, Grid::covering(-2.0, 2.0, 1025).spacing());
}

TEST(Grid, CellOfClamps) {
  const Grid g(-2.0, 2.0, 5);
  EXPECT_EQ(g.cell_of(-5.0), 0u);
  EXPECT_EQ(g.cell_of(-1.5), 0u);
  EXPECT_EQ(g.cell_of(-1.0), 1u);
  EXPECT_EQ(g.cell_of(1.99), 3u);
  EXPECT_EQ(g.cell_of(9.0), 3u);
}

TEST(PartitionOfUnity, SmoothStep) {
  for (double xi = -1.5; xi <= 1.5; xi += 0.125) {
    EXPECT_DOUBLE_EQ(chi_plus(xi) + chi_minus(xi), 1.0);
    const double d = 1e-6;
    if (std::abs(std::abs(xi) - 1.0) > 2 * d) {
      EXPECT_NEAR(chi_plus_derivative(xi), (chi_plus(xi + d) - chi_plus(xi - d)) / (2 * d), 1e-8);
    }
  }
  EXPECT_EQ(chi_plus(-1.0), 0.0);
  EXPECT_EQ(chi_plus(1.0), 1.0);
}

TEST(TailedFunction, TailMismatch) {
  TailedFunction f{{0.0, 1.0, 2.0}, 0.0, 2.5};
  EXPECT_EQ(kind_of([&] { f.check_tails(); }), ErrorKind::TailMismatch);
  f.tail_plus = 2.0;
  EXPECT_NO_THROW(f.check_tails());
}

TEST(E2, DecomposeComposeRoundTrip) {
  const Grid g(-4.0, 4.0, 81);
  const TailedFunction f = sampled(g, [](double x) { return std::tanh(2 * x) + 0.5; }, std::tanh(-8.0) + 0.5, std::tanh(8.0) + 0.5);
  const E2Parts p = e2_decompose(f, g);
  EXPECT_DOUBLE_EQ(p.a, f.tail_plus);
  EXPECT_DOUBLE_EQ(p.b, f.tail_minus);
  const TailedFunction back = e2_compose(p.bar, p.a, p.b, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(back.samples[i], f.samples[i], 1e-14);
}

TEST(H1, NormOfSmoothFunctionConverges) {
  // int exp(-x^2)^2 + (2x exp(-x^2))^2 = 2 sqrt(pi/2)
  const double exact = 2.0 * std::sqrt(M_PI / 2.0);
  double prev = 1.0;
  for (std::size_t n : {201u, 401u, 801u}) {
    const Grid g(-8.0, 8.0, n);
    std::vector<double> v;
    for (double x : g.nodes()) v.push_back(std::exp(-x * x));
    const double err = std::abs(h1_norm_sq(v, g) - exact);
    EXPECT_LT(err, prev / 3.0);
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(H1, ApplyMatchesInnerProduct) {
  const Grid g(-3.0, 3.0, 31);
  std::vector<double> a, b;
  for (double x : g.nodes()) {
    a.push_back(std::sin(x) + 0.1 * x * x);
    b.push_back(std::cos(2 * x));
  }
  std::vector<double> ka(a.size());
  apply_h1(a, g.spacing(), ka);
  double dot = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) dot += ka[i] * b[i];
  EXPECT_NEAR(dot, h1_inner(a, b, g), 1e-12);
  EXPECT_NEAR(h1_inner(a, a, g), h1_norm_sq(a, g), 1e-12);
}

TEST(Triple, ArithmeticAndNorm) {
  const Grid g(-3.0, 3.0, 61);
  BanachTriple x = BanachTriple::zero(g);
  EXPECT_EQ(b_norm(x), 0.0);
  x.zeta = sampled(g, [](double t) { return 0.3 * chi_plus(t); }, 0.0, 0.3);
  x.u = sampled(g, [](double t) { return std::exp(-4.0 * t * t); }, 0.0, 0.0);
  x.h = sampled(g, [](double t) { return chi_plus(t); }, 0.0, 1.0);
  const BanachTriple two = x + x;
  EXPECT_NEAR(b_norm(two), 2.0 * b_norm(x), 1e-13);
  EXPECT_NEAR(b_norm(2.0 * x - x), b_norm(x), 1e-13);
  EXPECT_NEAR(b_inner(x, x), b_norm(x) * b_norm(x), 1e-12);
  // Tail constants enter the norm.
  BanachTriple shifted = BanachTriple::zero(g);
  shifted.u = sampled(g, [](double) { return 1.0; }, 1.0, 1.0);
  EXPECT_GT(b_norm(shifted), 1.0);
}

TEST(Triple, RejectsTailAtMinusInfinityForH) {
  const Grid g(-3.0, 3.0, 61);
  BanachTriple x = BanachTriple::zero(g);
  x.h = sampled(g, [](double) { return 1.0; }, 1.0, 1.0);
  EXPECT_THROW(b_norm(x), Error);
}

TEST(Triple, GridMismatch) {
  const BanachTriple a = BanachTriple::zero(Grid(-3.0, 3.0, 61));
  const BanachTriple b = BanachTriple::zero(Grid(-3.0, 3.0, 62));
  EXPECT_EQ(kind_of([&] { b_inner(a, b); }), ErrorKind::GridMismatch);
}
