#include "pdmatch/generate.hpp"

#include <cmath>
#include <random>

#include "pdmatch/errors.hpp"

namespace pdm {

namespace {

double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng)
{
    for (;;) {
        const double u = 2.0 * uniform01(rng) - 1.0;
        const double v = 2.0 * uniform01(rng) - 1.0;
        const double r = u * u + v * v;
        if (r > 0.0 && r < 1.0) return u * std::sqrt(-2.0 * std::log(r) / r);
    }
}

std::vector<DiagramPoint> normal_points(std::size_t n, double s, std::mt19937_64& rng)
{
    if (n < 1) throw InvalidParameter("gen_normal needs n >= 1");
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidParameter("gen_normal needs a finite s > 0");
    std::vector<DiagramPoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = s * uniform01(rng);
        const double half = std::fabs(s * standard_normal(rng)) / 2.0;
        points.push_back({a - half, a + half, 1});
    }
    return points;
}

}  // namespace

PersistenceDiagram gen_normal(std::size_t n, double s, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return PersistenceDiagram(normal_points(n, s, rng));
}

PersistenceDiagram gen_massed(std::size_t n, double s, std::int64_t k, std::uint64_t seed)
{
    if (k < 1) throw InvalidParameter("gen_massed needs k >= 1");
    std::mt19937_64 rng(seed);
    auto points = normal_points(n, s, rng);
    const std::int64_t lo = (k + 1) / 2;
    const std::int64_t hi = (3 * k) / 2;
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    for (auto& p : points) p.mass = lo + static_cast<std::int64_t>(rng() % span);
    return PersistenceDiagram(std::move(points));
}

}  // namespace pdm
