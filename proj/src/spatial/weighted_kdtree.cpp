#include <algorithm>
#include <array>
#include <limits>

#include "pdmatch/errors.hpp"
#include "pdmatch/kdtree.hpp"

namespace pdm {

WeightedKdTree::WeightedKdTree(std::span<const Point2> points, std::span<const double> weights, std::size_t leaf_size)
    : points_(points.begin(), points.end()),
      weights_(weights.begin(), weights.end()),
      layout_(detail::build_kd_layout(points, leaf_size))
{
    if (weights.size() != points.size()) throw InvalidParameter("one weight per point is required");
    node_min_.resize(layout_.nodes.size());
    // Children are created after their parent, so a reverse sweep sees them first.
    for (std::size_t i = layout_.nodes.size(); i-- > 0;) {
        const KdNode& node = layout_.nodes[i];
        node_min_[i] = node.is_leaf()
                           ? leaf_min(node)
                           : std::min(node_min_[static_cast<std::size_t>(node.left)],
                                      node_min_[static_cast<std::size_t>(node.right)]);
    }
}

double WeightedKdTree::min_weight() const
{
    return node_min_.empty() ? std::numeric_limits<double>::infinity() : node_min_[0];
}

double WeightedKdTree::leaf_min(const KdNode& node) const
{
    double m = std::numeric_limits<double>::infinity();
    for (std::int32_t k = node.begin; k < node.end; ++k)
        m = std::min(m, weights_[static_cast<std::size_t>(layout_.order[static_cast<std::size_t>(k)])]);
    return m;
}

WeightedKdTree::BestTwo WeightedKdTree::best_two(Point2 query, double exponent, std::optional<PointId> exclude) const
{
    BestTwo result;
    if (layout_.nodes.empty()) return result;

    const auto offer = [&](Candidate c) {
        if (!result.best || c.better_than(*result.best)) {
            result.second = result.best;
            result.best = c;
        } else if (!result.second || c.better_than(*result.second)) {
            result.second = c;
        }
    };
    // A subtree can still matter while its bound does not exceed the second
    // best total; equality is kept so id tie-breaking stays exact.
    const auto prunable = [&](double bound) { return result.second && bound > result.second->total; };
    const auto bound_of = [&](std::int32_t index) {
        const auto i = static_cast<std::size_t>(index);
        return pow_q(layout_.nodes[i].box.linf_distance(query), exponent) + node_min_[i];
    };

    std::array<std::pair<std::int32_t, double>, 128> stack;
    std::size_t top = 0;
    stack[top++] = {0, bound_of(0)};
    while (top > 0) {
        const auto [index, bound] = stack[--top];
        if (prunable(bound)) continue;
        const KdNode& node = layout_.nodes[static_cast<std::size_t>(index)];
        if (node.is_leaf()) {
            for (std::int32_t k = node.begin; k < node.end; ++k) {
                const PointId id = layout_.order[static_cast<std::size_t>(k)];
                if (exclude && *exclude == id) continue;
                const auto i = static_cast<std::size_t>(id);
                offer({id, pow_q(linf_distance(query, points_[i]), exponent) + weights_[i]});
            }
            continue;
        }
        const double bl = bound_of(node.left);
        const double br = bound_of(node.right);
        if (bl <= br) {
            stack[top++] = {node.right, br};
            stack[top++] = {node.left, bl};
        } else {
            stack[top++] = {node.left, bl};
            stack[top++] = {node.right, br};
        }
    }
    return result;
}

void WeightedKdTree::increase_weight(PointId id, double new_weight)
{
    auto& w = weights_.at(static_cast<std::size_t>(id));
    if (new_weight < w) throw ContractViolation("k-d tree weights may only increase");
    w = new_weight;
    std::int32_t index = layout_.leaf_of[static_cast<std::size_t>(id)];
    double updated = leaf_min(layout_.nodes[static_cast<std::size_t>(index)]);
    while (index >= 0) {
        auto& stored = node_min_[static_cast<std::size_t>(index)];
        if (stored == updated) break;
        stored = updated;
        index = layout_.nodes[static_cast<std::size_t>(index)].parent;
        if (index < 0) break;
        const KdNode& parent = layout_.nodes[static_cast<std::size_t>(index)];
        updated = std::min(node_min_[static_cast<std::size_t>(parent.left)],
                           node_min_[static_cast<std::size_t>(parent.right)]);
    }
}

bool WeightedKdTree::audit() const
{
    for (std::size_t i = 0; i < layout_.nodes.size(); ++i) {
        const KdNode& node = layout_.nodes[i];
        // Independent of node_min_: scan every point in the subtree range.
        double expected = std::numeric_limits<double>::infinity();
        for (std::int32_t k = node.begin; k < node.end; ++k)
            expected = std::min(expected, weights_[static_cast<std::size_t>(layout_.order[static_cast<std::size_t>(k)])]);
        if (node_min_[i] != expected) return false;
    }
    return true;
}

}  // namespace pdm
