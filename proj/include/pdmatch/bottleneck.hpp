#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pdmatch/diagram.hpp"
#include "pdmatch/instance.hpp"

namespace pdm {

enum class BottleneckEngine {
    Geometric,     // neighbors found with deletable k-d trees
    NonGeometric,  // neighbors found by scanning every admissible object
};

struct DistanceBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bounds on the largest L-infinity distance between any bidder and any object,
/// from one farthest-point walk: bidder 0 -> farthest object v0 -> farthest
/// bidder u0. lower = |u0 - v0|, upper = 3 * lower.
DistanceBounds max_distance_3approx(const MatchingInstance& instance);

/// Hopcroft-Karp over the threshold graph G[r] (edges of weight <= r),
/// keeping its matching between calls so a binary search over r can start
/// each test from the previous answer.
class HopcroftKarp {
public:
    HopcroftKarp(const MatchingInstance& instance, BottleneckEngine engine);
    ~HopcroftKarp();
    HopcroftKarp(HopcroftKarp&&) noexcept;
    HopcroftKarp& operator=(HopcroftKarp&&) noexcept;

    /// Drops matched edges heavier than r, grows the matching to a maximum
    /// matching of G[r] and reports whether it is perfect.
    bool feasible(double r);

    const MatchingInstance& instance() const noexcept { return *instance_; }
    BottleneckEngine engine() const noexcept { return engine_; }
    std::size_t matching_size() const noexcept { return matched_; }
    VertexId object_of(VertexId bidder) const { return mate_bidder_[static_cast<std::size_t>(bidder)]; }
    VertexId bidder_of(VertexId object) const { return mate_object_[static_cast<std::size_t>(object)]; }

    /// Injective both ways, admissible, and every edge weight <= r.
    bool matching_is_valid(double r) const;

    std::uint64_t phases() const noexcept { return phases_; }

    class NeighborSource;

private:
    bool run_phase();
    void unmatch_heavier_than(double r);

    const MatchingInstance* instance_;
    BottleneckEngine engine_;
    std::unique_ptr<NeighborSource> source_;
    std::vector<VertexId> mate_bidder_;
    std::vector<VertexId> mate_object_;
    std::size_t matched_ = 0;
    std::uint64_t phases_ = 0;

    std::vector<std::vector<VertexId>> layers_;
    std::vector<VertexId> scratch_;
};

/// Result of the approximate search: the exact distance o lies in (lower, upper]
/// and upper < (1 + delta) * o. Both are 0 when the diagrams coincide.
struct BottleneckInterval {
    double lower = 0.0;
    double upper = 0.0;
};

struct BottleneckOptions {
    BottleneckEngine engine = BottleneckEngine::Geometric;
    int max_iterations = 200;
};

/// Binary search for the bottleneck distance on [0, 3 * max_distance_3approx().lower]
/// until (upper - lower) < delta * lower. Requires delta in (0, 1).
BottleneckInterval approx_bottleneck(HopcroftKarp& matcher, double delta, int max_iterations = 200);
BottleneckInterval approx_bottleneck(const PersistenceDiagram& x, const PersistenceDiagram& y, double delta,
                                     const BottleneckOptions& options = {});

/// All distinct non-skew edge weights in (a, b], ascending. Off-diagonal pairs
/// are found by sweeping x and y coordinate differences; own-projection edges
/// are added directly.
std::vector<double> candidate_distances(const MatchingInstance& instance, double a, double b);

/// Exact bottleneck distance: the approximate interval followed by a binary
/// search over candidate_distances(). The value is one of the edge weights.
double exact_bottleneck(const PersistenceDiagram& x, const PersistenceDiagram& y, double delta,
                        const BottleneckOptions& options = {});

}  // namespace pdm
