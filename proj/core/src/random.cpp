#include "hsx/random.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "hsx/errors.hpp"

namespace hsx {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t base = splitmix64(state);
  state = base ^ (stream * 0xd1b54a32d192ed03ULL);
  return splitmix64(state);
}

namespace {

struct Profile {
  std::array<double, 3> centre{};
  std::array<double, 3> width{};
  std::array<double, 3> weight{};
  double weight_sum = 0.0;
  double roughness = 0.0;
  double amp = 0.0;
  double omega = 0.0;
  double phase = 0.0;

  double b(double xi) const {
    double s = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double u = (xi - centre[k]) / width[k];
      if (std::abs(u) >= 1.0) continue;
      const double q = 1.0 - u * u;
      s += weight[k] * q * q * q * q;
    }
    return roughness * s / weight_sum;
  }

  double w(double xi) const {
    const double bb = b(xi);
    return amp * std::sin(omega * xi + phase) * std::sqrt(bb * (1.0 - bb));
  }
};

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                       0.9061798459386640};
constexpr std::array<double, 5> kWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                         0.4786286704993665, 0.2369268850561891};

}  // namespace

LagrangianState random_g0_state(std::uint64_t seed, const Grid& grid, double roughness) {
  if (!(roughness > 0.0 && roughness < 1.0)) throw Error(ErrorKind::InvalidArgument, "roughness must lie in (0, 1)");
  Rng rng(derive_seed(seed, 0));
  Profile p;
  p.roughness = roughness;
  for (std::size_t k = 0; k < 3; ++k) {
    p.centre[k] = rng.uniform(-1.5, 1.5);
    p.width[k] = rng.uniform(0.3, 0.8);
    p.weight[k] = rng.uniform(0.2, 1.0);
    p.weight_sum += p.weight[k];
  }
  p.amp = rng.uniform(0.3, 0.95);
  p.omega = rng.uniform(1.0, 4.0);
  p.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double u_minus = roughness * rng.uniform(-0.5, 0.5);

  const std::size_t n = grid.size();
  const double h = grid.spacing();
  LagrangianState x = LagrangianState::identity(grid);
  x.U[0] = u_minus;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double mid = grid.node(i) + 0.5 * h;
    double int_b = 0.0;
    double int_w = 0.0;
    for (std::size_t q = 0; q < 5; ++q) {
      const double xi = mid + 0.5 * h * kNodes[q];
      int_b += kWeights[q] * p.b(xi);
      int_w += kWeights[q] * p.w(xi);
    }
    int_b *= 0.5 * h;
    int_w *= 0.5 * h;
    x.H[i + 1] = x.H[i] + int_b;
    x.U[i + 1] = x.U[i] + int_w;
  }
  for (std::size_t i = 0; i < n; ++i) x.y[i] = grid.node(i) - x.H[i];
  x.tails = Tails{0.0, -x.H.back(), x.U.front(), x.U.back(), x.H.back()};
  return x;
}

}  // namespace hsx
