#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pdmatch/geometry.hpp"

namespace pdm {

using PointId = std::int32_t;

/// Shape shared by both planar trees: median splits alternating x, y, x, ...
/// Bounding boxes are shrunk to the points of the subtree. Leaves cover a
/// range of `order()` holding at most `leaf_size` points.
struct KdNode {
    Box box;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t parent = -1;
    std::int32_t begin = 0;  // range into order()
    std::int32_t end = 0;

    bool is_leaf() const noexcept { return left < 0; }
};

namespace detail {

struct KdLayout {
    std::vector<KdNode> nodes;
    std::vector<PointId> order;        // point ids, permuted so every node owns a contiguous range
    std::vector<std::int32_t> leaf_of;  // point id -> leaf node
    std::size_t depth = 0;
};

KdLayout build_kd_layout(std::span<const Point2> points, std::size_t leaf_size);

}  // namespace detail

/// Planar k-d tree answering "some live point within distance r" queries, with
/// deletion by marking. The tree is never rebalanced; each node keeps the
/// number of live points below it so empty subtrees are skipped.
class DeletableKdTree {
public:
    DeletableKdTree() = default;
    /// An empty point list gives an empty tree whose queries find nothing.
    explicit DeletableKdTree(std::span<const Point2> points, std::size_t leaf_size = 1);

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t live_count() const noexcept { return layout_.nodes.empty() ? 0 : live_[0]; }
    bool is_live(PointId id) const { return alive_[static_cast<std::size_t>(id)] != 0; }
    Point2 point(PointId id) const { return points_[static_cast<std::size_t>(id)]; }

    /// Some live point s with linf_distance(query, s) <= radius, if any exists.
    std::optional<PointId> query_within(Point2 query, double radius) const;

    /// Marks `id` deleted. ContractViolation if it is already deleted.
    void remove(PointId id);

    /// Makes every point live again without rebuilding the tree.
    void restore_all();

    std::span<const KdNode> nodes() const noexcept { return layout_.nodes; }
    std::size_t depth() const noexcept { return layout_.depth; }
    std::size_t live_below(std::size_t node) const { return live_[node]; }

    /// Recomputes all live counters from the point flags and compares.
    bool audit() const;

private:
    std::vector<Point2> points_;
    detail::KdLayout layout_;
    std::vector<std::int32_t> live_;
    std::vector<std::int32_t> initial_live_;
    std::vector<std::uint8_t> alive_;
};

/// Planar k-d tree whose points carry weights that can only increase. Every
/// node stores the minimum weight in its subtree; used to find the points
/// minimizing distance^q + weight.
class WeightedKdTree {
public:
    struct Candidate {
        PointId id = -1;
        double total = 0.0;  // distance^q + weight

        /// Smaller total first, ties by smaller id.
        bool better_than(const Candidate& other) const noexcept
        {
            return total < other.total || (total == other.total && id < other.id);
        }
    };

    struct BestTwo {
        std::optional<Candidate> best;
        std::optional<Candidate> second;
    };

    WeightedKdTree() = default;
    WeightedKdTree(std::span<const Point2> points, std::span<const double> weights, std::size_t leaf_size = 1);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    Point2 point(PointId id) const { return points_[static_cast<std::size_t>(id)]; }
    double weight(PointId id) const { return weights_[static_cast<std::size_t>(id)]; }
    double min_weight() const;

    /// The two distinct points minimizing linf_distance(query, p)^exponent + weight(p),
    /// skipping `exclude`. `second` is empty when fewer than two points qualify.
    BestTwo best_two(Point2 query, double exponent, std::optional<PointId> exclude = std::nullopt) const;

    /// Raises the weight of `id`; ContractViolation if `new_weight` is smaller.
    void increase_weight(PointId id, double new_weight);

    std::span<const KdNode> nodes() const noexcept { return layout_.nodes; }
    std::span<const PointId> points_of(const KdNode& node) const noexcept
    {
        return std::span<const PointId>(layout_.order).subspan(static_cast<std::size_t>(node.begin),
                                                                static_cast<std::size_t>(node.end - node.begin));
    }
    double subtree_min_weight(std::size_t node) const { return node_min_[node]; }
    std::size_t depth() const noexcept { return layout_.depth; }

    /// Recomputes every subtree minimum from scratch and compares.
    bool audit() const;

private:
    double leaf_min(const KdNode& node) const;

    std::vector<Point2> points_;
    std::vector<double> weights_;
    detail::KdLayout layout_;
    std::vector<double> node_min_;
};

}  // namespace pdm
