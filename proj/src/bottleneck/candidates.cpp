#include <algorithm>

#include "pdmatch/bottleneck.hpp"
#include "pdmatch/errors.hpp"

namespace pdm {

namespace {

struct Keyed {
    double key;
    VertexId id;
};

// Adds every off-diagonal pair whose coordinate difference (selected by `coord`)
// lies in (a, b] and whose L-infinity distance also lies in (a, b].
template <class Coord>
void sweep(const MatchingInstance& instance, double a, double b, Coord coord, std::vector<double>& out)
{
    std::vector<Keyed> objects;
    objects.reserve(instance.offdiag_object_count());
    for (std::size_t j = 0; j < instance.offdiag_object_count(); ++j)
        objects.push_back({coord(instance.object(static_cast<VertexId>(j)).pos), static_cast<VertexId>(j)});
    std::sort(objects.begin(), objects.end(), [](const Keyed& l, const Keyed& r) { return l.key < r.key; });

    const auto emit = [&](VertexId u, auto first, auto last) {
        for (auto it = first; it != last; ++it) {
            const double d = instance.distance_unchecked(u, it->id);
            if (d > a && d <= b) out.push_back(d);
        }
    };

    for (std::size_t i = 0; i < instance.offdiag_bidder_count(); ++i) {
        const auto u = static_cast<VertexId>(i);
        const double cu = coord(instance.bidder(u).pos);
        // Objects to the right: (v - u) increases along the sorted order.
        const auto right_lo = std::partition_point(objects.begin(), objects.end(),
                                                   [&](const Keyed& v) { return v.key - cu <= a; });
        const auto right_hi = std::partition_point(right_lo, objects.end(),
                                                   [&](const Keyed& v) { return v.key - cu <= b; });
        emit(u, right_lo, right_hi);
        // Objects to the left: (u - v) decreases along the sorted order.
        const auto left_lo = std::partition_point(objects.begin(), objects.end(),
                                                  [&](const Keyed& v) { return cu - v.key > b; });
        const auto left_hi = std::partition_point(left_lo, objects.end(),
                                                  [&](const Keyed& v) { return cu - v.key > a; });
        emit(u, left_lo, left_hi);
    }
}

}  // namespace

std::vector<double> candidate_distances(const MatchingInstance& instance, double a, double b)
{
    if (!(a >= 0.0 && a < b)) throw InvalidParameter("candidate interval requires 0 <= a < b");
    std::vector<double> out;
    sweep(instance, a, b, [](Point2 p) { return p.x; }, out);
    sweep(instance, a, b, [](Point2 p) { return p.y; }, out);
    for (std::size_t i = 0; i < instance.size(); ++i) {
        const auto bidder = static_cast<VertexId>(i);
        const Vertex& v = instance.bidder(bidder);
        const double d = instance.distance(bidder, v.partner);
        if (d > a && d <= b) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace pdm
