#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdm {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double linf_distance(Point2 a, Point2 b) noexcept
{
    return std::max(std::fabs(a.x - b.x), std::fabs(a.y - b.y));
}

/// Closest point on the diagonal under L-infinity: ((x+y)/2, (x+y)/2).
inline Point2 diagonal_projection(Point2 p) noexcept
{
    const double m = (p.x + p.y) / 2.0;
    return {m, m};
}

/// d^q, with the common exponents special-cased so that every engine
/// produces bit-identical costs for the same distance.
inline double pow_q(double d, double q) noexcept
{
    if (q == 1.0) return d;
    if (q == 2.0) return d * d;
    return std::pow(d, q);
}

/// Axis-aligned bounding box.
struct Box {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void extend(Point2 p) noexcept
    {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }

    // Lower bound on linf_distance(p, s) for every s inside the box. Built from
    // the same subtractions as linf_distance so the bound never exceeds the
    // floating-point distance to a contained point.
    double linf_distance(Point2 p) const noexcept
    {
        double dx = 0.0;
        if (p.x < min_x) dx = min_x - p.x;
        else if (p.x > max_x) dx = p.x - max_x;
        double dy = 0.0;
        if (p.y < min_y) dy = min_y - p.y;
        else if (p.y > max_y) dy = p.y - max_y;
        return std::max(dx, dy);
    }
};

}  // namespace pdm
