#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pdmatch/diagram.hpp"

namespace pdm::testing {

/// Random diagram with `n` points. Coordinates are integers in [0, range]
/// when `integral`, otherwise uniform reals; masses uniform in [1, max_mass].
inline PersistenceDiagram random_diagram(std::mt19937_64& rng, std::size_t n, double range, bool integral,
                                         std::int64_t max_mass = 1)
{
    std::vector<DiagramPoint> points;
    std::uniform_real_distribution<double> real(0.0, range);
    std::uniform_int_distribution<int> whole(0, static_cast<int>(range));
    std::uniform_int_distribution<std::int64_t> mass(1, max_mass);
    for (std::size_t i = 0; i < n; ++i) {
        double a = integral ? whole(rng) : real(rng);
        double b = integral ? whole(rng) : real(rng);
        if (a > b) std::swap(a, b);
        points.push_back({a, b, mass(rng)});
    }
    return PersistenceDiagram(std::move(points));
}

}  // namespace pdm::testing
