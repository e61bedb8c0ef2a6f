#pragma once

// Seeded, splittable randomness. Child seeds come from SplitMix64, streams
// from mt19937_64; doubles are built from raw bits so that sequences agree
// across standard libraries.

#include <cstdint>
#include <random>

#include "hsx/banach.hpp"
#include "hsx/state.hpp"

namespace hsx {

std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of child stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Smooth G0 state: H' = b, y' = 1 - b, U' = sigma sqrt(b (1 - b)) with b a
/// sum of three bumps scaled to at most `roughness` and |sigma| <= 0.95, so
/// y'^2 + H'^2 + 2U'^2 < 1 wherever b > 0. The underlying profile does not
/// depend on the grid. Requires 0 < roughness < 1.
LagrangianState random_g0_state(std::uint64_t seed, const Grid& grid, double roughness);

}  // namespace hsx
