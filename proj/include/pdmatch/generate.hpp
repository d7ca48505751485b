#pragma once

#include <cstdint>

#include "pdmatch/diagram.hpp"

namespace pdm {

/// `n` points (a - |b|/2, a + |b|/2) with a ~ Uniform[0, s) and b ~ Normal(0, s).
/// Randomness: std::mt19937_64 seeded with `seed`; uniforms are the top 53
/// bits of one draw scaled to [0, 1); normals use the Marsaglia polar method,
/// keeping the first value of each accepted pair.
PersistenceDiagram gen_normal(std::size_t n, double s, std::uint64_t seed);

/// gen_normal() points carrying masses uniform on [ceil(k/2), floor(3k/2)],
/// drawn from the same generator after the points.
PersistenceDiagram gen_massed(std::size_t n, double s, std::int64_t k, std::uint64_t seed);

}  // namespace pdm
