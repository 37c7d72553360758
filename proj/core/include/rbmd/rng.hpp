#pragma once

#include <cstdint>
#include <random>

#include "rbmd/types.hpp"

namespace rbmd {

/// Seedable generator used for every random draw in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, so a given seed yields the same bits on every conforming
/// platform. Uniforms take the top 53 bits of one engine output; Gaussians use
/// the Marsaglia polar method and consume engine outputs in pairs until a pair
/// is accepted. No state is cached between calls.
///
/// Stream splitting: independent streams are derived from one user seed with
/// `Rng::stream(seed, id)`, which seeds the engine with
/// splitmix64(seed + id * 0x9E3779B97F4A7C15). Stream 0 drives trajectory
/// simulation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t id);
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t id);

  /// Uniform on [0, 1).
  double uniform();
  /// A pair of independent standard normals.
  Vec2 normal_pair();

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kSimulationStream = 0;

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rbmd
