#include <algorithm>
#include <array>

#include "pdmatch/errors.hpp"
#include "pdmatch/kdtree.hpp"

namespace pdm {

namespace detail {

namespace {

struct Builder {
    std::span<const Point2> points;
    std::size_t leaf_size;
    KdLayout& out;

    std::int32_t build(std::int32_t begin, std::int32_t end, std::int32_t parent, std::size_t depth)
    {
        const auto index = static_cast<std::int32_t>(out.nodes.size());
        out.nodes.push_back({});
        out.depth = std::max(out.depth, depth);
        KdNode node;
        node.parent = parent;
        node.begin = begin;
        node.end = end;
        for (std::int32_t k = begin; k < end; ++k) node.box.extend(points[static_cast<std::size_t>(out.order[k])]);

        if (static_cast<std::size_t>(end - begin) > leaf_size) {
            const bool by_x = depth % 2 == 0;
            const std::int32_t mid = begin + (end - begin) / 2;
            const auto key = [&](PointId id) {
                const Point2 p = points[static_cast<std::size_t>(id)];
                return std::pair{by_x ? p.x : p.y, id};
            };
            std::nth_element(out.order.begin() + begin, out.order.begin() + mid, out.order.begin() + end,
                             [&](PointId a, PointId b) { return key(a) < key(b); });
            node.left = build(begin, mid, index, depth + 1);
            node.right = build(mid, end, index, depth + 1);
        } else {
            for (std::int32_t k = begin; k < end; ++k) out.leaf_of[static_cast<std::size_t>(out.order[k])] = index;
        }
        out.nodes[static_cast<std::size_t>(index)] = node;
        return index;
    }
};

}  // namespace

KdLayout build_kd_layout(std::span<const Point2> points, std::size_t leaf_size)
{
    if (leaf_size == 0) throw InvalidParameter("k-d tree leaf size must be positive");
    KdLayout layout;
    layout.order.resize(points.size());
    layout.leaf_of.assign(points.size(), -1);
    for (std::size_t i = 0; i < points.size(); ++i) layout.order[i] = static_cast<PointId>(i);
    if (points.empty()) return layout;
    layout.nodes.reserve(2 * points.size());
    Builder{points, leaf_size, layout}.build(0, static_cast<std::int32_t>(points.size()), -1, 0);
    return layout;
}

}  // namespace detail

DeletableKdTree::DeletableKdTree(std::span<const Point2> points, std::size_t leaf_size)
    : points_(points.begin(), points.end()), layout_(detail::build_kd_layout(points, leaf_size))
{
    live_.resize(layout_.nodes.size());
    for (std::size_t i = 0; i < layout_.nodes.size(); ++i) live_[i] = layout_.nodes[i].end - layout_.nodes[i].begin;
    initial_live_ = live_;
    alive_.assign(points_.size(), 1);
}

std::optional<PointId> DeletableKdTree::query_within(Point2 query, double radius) const
{
    if (layout_.nodes.empty() || live_[0] == 0) return std::nullopt;
    // Balanced median splits keep the depth logarithmic, so the stack stays small.
    std::array<std::int32_t, 128> stack;
    std::size_t top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const std::int32_t index = stack[--top];
        const KdNode& node = layout_.nodes[static_cast<std::size_t>(index)];
        if (live_[static_cast<std::size_t>(index)] == 0 || node.box.linf_distance(query) > radius) continue;
        if (node.is_leaf()) {
            for (std::int32_t k = node.begin; k < node.end; ++k) {
                const PointId id = layout_.order[static_cast<std::size_t>(k)];
                if (alive_[static_cast<std::size_t>(id)] && linf_distance(query, points_[static_cast<std::size_t>(id)]) <= radius)
                    return id;
            }
            continue;
        }
        const auto& l = layout_.nodes[static_cast<std::size_t>(node.left)];
        const auto& r = layout_.nodes[static_cast<std::size_t>(node.right)];
        // Closer child on top of the stack.
        if (l.box.linf_distance(query) <= r.box.linf_distance(query)) {
            stack[top++] = node.right;
            stack[top++] = node.left;
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return std::nullopt;
}

void DeletableKdTree::remove(PointId id)
{
    auto& flag = alive_.at(static_cast<std::size_t>(id));
    if (!flag) throw ContractViolation("k-d tree point deleted twice");
    flag = 0;
    for (std::int32_t node = layout_.leaf_of[static_cast<std::size_t>(id)]; node >= 0;
         node = layout_.nodes[static_cast<std::size_t>(node)].parent)
        --live_[static_cast<std::size_t>(node)];
}

void DeletableKdTree::restore_all()
{
    live_ = initial_live_;
    std::fill(alive_.begin(), alive_.end(), 1);
}

bool DeletableKdTree::audit() const
{
    for (std::size_t i = 0; i < layout_.nodes.size(); ++i) {
        const KdNode& node = layout_.nodes[i];
        std::int32_t expected = 0;
        if (node.is_leaf()) {
            for (std::int32_t k = node.begin; k < node.end; ++k)
                expected += alive_[static_cast<std::size_t>(layout_.order[static_cast<std::size_t>(k)])];
        } else {
            expected = live_[static_cast<std::size_t>(node.left)] + live_[static_cast<std::size_t>(node.right)];
        }
        if (live_[i] != expected) return false;
    }
    return true;
}

}  // namespace pdm
