#include <doctest.h>

#include <algorithm>
#include <random>

#include "pdmatch/errors.hpp"
#include "pdmatch/kdtree.hpp"

using namespace pdm;

namespace {

std::vector<Point2> random_points(std::mt19937_64& rng, std::size_t n, double range)
{
    std::uniform_real_distribution<double> u(0.0, range);
    std::vector<Point2> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

std::optional<WeightedKdTree::Candidate> scan_best(const std::vector<Point2>& pts, const std::vector<double>& w,
                                                   Point2 q, double e, std::optional<PointId> skip,
                                                   std::optional<PointId> also_skip)
{
    std::optional<WeightedKdTree::Candidate> best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto id = static_cast<PointId>(i);
        if (id == skip || id == also_skip) continue;
        const WeightedKdTree::Candidate c{id, pow_q(linf_distance(q, pts[i]), e) + w[i]};
        if (!best || c.better_than(*best)) best = c;
    }
    return best;
}

void check_against_scan(const WeightedKdTree& tree, const std::vector<Point2>& pts, const std::vector<double>& w,
                        Point2 q, double e, std::optional<PointId> exclude)
{
    const auto got = tree.best_two(q, e, exclude);
    const auto first = scan_best(pts, w, q, e, exclude, std::nullopt);
    REQUIRE(got.best.has_value() == first.has_value());
    if (!first) return;
    CHECK(got.best->total == first->total);
    CHECK(got.best->id == first->id);
    const auto second = scan_best(pts, w, q, e, exclude, first->id);
    REQUIRE(got.second.has_value() == second.has_value());
    if (!second) return;
    CHECK(got.second->total == second->total);
    CHECK(got.second->id == second->id);
}

}  // namespace

TEST_CASE("deletable tree shape")
{
    SUBCASE("single point")
    {
        const std::vector<Point2> pts{{1, 2}};
        const DeletableKdTree tree(pts);
        REQUIRE(tree.nodes().size() == 1);
        CHECK(tree.nodes()[0].is_leaf());
        CHECK(tree.query_within({1, 2}, 0.0) == 0);
    }
    SUBCASE("collinear points split at the median x")
    {
        const std::vector<Point2> pts{{3, 0}, {0, 0}, {2, 0}, {1, 0}};
        const DeletableKdTree tree(pts);
        const KdNode& root = tree.nodes()[0];
        REQUIRE_FALSE(root.is_leaf());
        const KdNode& l = tree.nodes()[static_cast<std::size_t>(root.left)];
        const KdNode& r = tree.nodes()[static_cast<std::size_t>(root.right)];
        CHECK(l.end - l.begin == 2);
        CHECK(r.end - r.begin == 2);
        CHECK(l.box.max_x == 1.0);
        CHECK(r.box.min_x == 2.0);
    }
    SUBCASE("every point reachable, counters consistent")
    {
        std::mt19937_64 rng(1);
        const auto pts = random_points(rng, 1000, 100);
        const DeletableKdTree tree(pts);
        std::vector<int> seen(pts.size(), 0);
        std::size_t leaves = 0;
        for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
            const KdNode& node = tree.nodes()[i];
            if (!node.is_leaf()) {
                CHECK(tree.live_below(i) == tree.live_below(static_cast<std::size_t>(node.left)) +
                                                 tree.live_below(static_cast<std::size_t>(node.right)));
                continue;
            }
            ++leaves;
            CHECK(tree.live_below(i) == static_cast<std::size_t>(node.end - node.begin));
        }
        CHECK(leaves == 1000);
        CHECK(tree.live_count() == 1000);
        CHECK(tree.audit());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto hit = tree.query_within(pts[i], 0.0);
            REQUIRE(hit.has_value());
            CHECK(pts[static_cast<std::size_t>(*hit)] == pts[i]);
        }
    }
    SUBCASE("empty tree finds nothing")
    {
        const DeletableKdTree tree(std::vector<Point2>{});
        CHECK_FALSE(tree.query_within({0, 0}, 1e300).has_value());
    }
}

TEST_CASE("deletable tree queries and deletions")
{
    std::mt19937_64 rng(2);
    const auto pts = random_points(rng, 200, 100);
    DeletableKdTree tree(pts);

    SUBCASE("query at a stored point")
    {
        const auto hit = tree.query_within(pts[17], 0.0);
        REQUIRE(hit);
        CHECK(linf_distance(pts[static_cast<std::size_t>(*hit)], pts[17]) == 0.0);
    }
    SUBCASE("delete then query at that point")
    {
        tree.remove(17);
        CHECK_FALSE(tree.query_within(pts[17], 0.0).has_value());
        CHECK_THROWS_AS(tree.remove(17), ContractViolation);
    }
    SUBCASE("survivor of mass deletion")
    {
        for (PointId i = 0; i < 200; ++i)
            if (i != 99) tree.remove(i);
        CHECK(tree.query_within({-1e6, 1e6}, 1e7) == 99);
        tree.remove(99);
        CHECK_FALSE(tree.query_within({0, 0}, 1e7).has_value());
        CHECK(tree.audit());
        tree.restore_all();
        CHECK(tree.live_count() == 200);
        CHECK(tree.audit());
    }
    SUBCASE("random queries agree with a linear scan")
    {
        std::uniform_real_distribution<double> u(-10, 110), radius(0, 15);
        for (int k = 0; k < 2000; ++k) {
            const Point2 q{u(rng), u(rng)};
            const double r = radius(rng);
            const bool expect =
                std::any_of(pts.begin(), pts.end(), [&](Point2 p) { return linf_distance(q, p) <= r; });
            const auto hit = tree.query_within(q, r);
            REQUIRE(hit.has_value() == expect);
            if (hit) CHECK(linf_distance(q, pts[static_cast<std::size_t>(*hit)]) <= r);
        }
    }
    SUBCASE("interleaved deletes and queries")
    {
        std::vector<bool> live(pts.size(), true);
        std::uniform_real_distribution<double> u(-10, 110), radius(0, 30);
        std::uniform_int_distribution<int> pick(0, 199);
        for (int op = 0; op < 500; ++op) {
            const Point2 q{u(rng), u(rng)};
            const double r = radius(rng);
            const auto hit = tree.query_within(q, r);
            bool expect = false;
            for (std::size_t i = 0; i < pts.size(); ++i) expect = expect || (live[i] && linf_distance(q, pts[i]) <= r);
            REQUIRE(hit.has_value() == expect);
            if (hit) {
                CHECK(live[static_cast<std::size_t>(*hit)]);
                CHECK(linf_distance(q, pts[static_cast<std::size_t>(*hit)]) <= r);
                tree.remove(*hit);
                live[static_cast<std::size_t>(*hit)] = false;
            } else {
                const int id = pick(rng);
                if (live[static_cast<std::size_t>(id)]) {
                    tree.remove(id);
                    live[static_cast<std::size_t>(id)] = false;
                }
            }
        }
        CHECK(tree.audit());
    }
}

TEST_CASE("deletable tree with leaf buckets")
{
    std::mt19937_64 rng(8);
    const auto pts = random_points(rng, 300, 50);
    DeletableKdTree tree(pts, 8);
    std::uniform_real_distribution<double> u(0, 50), radius(0, 5);
    for (int k = 0; k < 500; ++k) {
        const Point2 q{u(rng), u(rng)};
        const double r = radius(rng);
        const auto hit = tree.query_within(q, r);
        bool expect = false;
        for (std::size_t i = 0; i < pts.size(); ++i) expect = expect || (tree.is_live(static_cast<PointId>(i)) && linf_distance(q, pts[i]) <= r);
        REQUIRE(hit.has_value() == expect);
        if (hit) tree.remove(*hit);
    }
    CHECK(tree.audit());
}

TEST_CASE("weighted tree best two")
{
    SUBCASE("zero weights reduce to two nearest neighbours")
    {
        const std::vector<Point2> pts{{0, 0}, {5, 5}, {1, 0}, {10, 10}};
        const std::vector<double> w(4, 0.0);
        const WeightedKdTree tree(pts, w);
        const auto got = tree.best_two({0.2, 0.1}, 1.0);
        REQUIRE(got.best);
        REQUIRE(got.second);
        CHECK(got.best->id == 0);
        CHECK(got.second->id == 2);
    }
    SUBCASE("weight outweighs distance")
    {
        const std::vector<Point2> pts{{10, 0}, {1, 0}};
        const std::vector<double> w{0.0, 100.0};
        const WeightedKdTree tree(pts, w);
        const auto got = tree.best_two({0, 0}, 1.0);
        CHECK(got.best->id == 0);
        CHECK(got.best->total == 10.0);
        CHECK(got.second->total == 101.0);
    }
    SUBCASE("single point has no second")
    {
        const std::vector<Point2> pts{{1, 1}};
        const std::vector<double> w{3.0};
        const WeightedKdTree tree(pts, w);
        const auto got = tree.best_two({0, 0}, 2.0);
        CHECK(got.best->total == 4.0);
        CHECK_FALSE(got.second.has_value());
        CHECK_FALSE(tree.best_two({0, 0}, 2.0, 0).best.has_value());
    }
    SUBCASE("random instances agree with a linear scan")
    {
        std::mt19937_64 rng(4);
        for (const double e : {1.0, 2.0, 1.5}) {
            auto pts = random_points(rng, 300, 100);
            // A few duplicates and integer weights to exercise ties.
            for (int k = 0; k < 30; ++k) pts[static_cast<std::size_t>(k + 100)] = pts[static_cast<std::size_t>(k)];
            std::vector<double> w(pts.size());
            std::uniform_int_distribution<int> wi(0, 20);
            for (auto& x : w) x = wi(rng);
            WeightedKdTree tree(pts, w);
            std::uniform_real_distribution<double> u(-20, 120);
            std::uniform_int_distribution<int> pick(0, 299);
            for (int k = 0; k < 300; ++k) {
                const Point2 q{u(rng), u(rng)};
                std::optional<PointId> exclude;
                if (k % 3 == 0) exclude = pick(rng);
                check_against_scan(tree, pts, w, q, e, exclude);
                const int id = pick(rng);
                w[static_cast<std::size_t>(id)] += wi(rng);
                tree.increase_weight(id, w[static_cast<std::size_t>(id)]);
            }
            CHECK(tree.audit());
        }
    }
}

TEST_CASE("weighted tree minimum maintenance")
{
    const std::vector<Point2> pts{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}};
    const std::vector<double> w{5, 1, 7, 3, 9};
    WeightedKdTree tree(pts, w);
    CHECK(tree.min_weight() == 1.0);
    tree.increase_weight(2, 8);
    CHECK(tree.min_weight() == 1.0);
    tree.increase_weight(1, 10);
    CHECK(tree.min_weight() == 3.0);
    CHECK(tree.audit());
    CHECK_THROWS_AS(tree.increase_weight(3, 2.0), ContractViolation);

    std::mt19937_64 rng(6);
    const auto many = random_points(rng, 500, 10);
    std::vector<double> mw(many.size(), 0.0);
    WeightedKdTree big(many, mw);
    std::uniform_int_distribution<int> pick(0, 499);
    std::uniform_real_distribution<double> step(0, 3);
    for (int k = 0; k < 1000; ++k) {
        const int id = pick(rng);
        mw[static_cast<std::size_t>(id)] += step(rng);
        big.increase_weight(id, mw[static_cast<std::size_t>(id)]);
    }
    CHECK(big.audit());
    CHECK(big.min_weight() == *std::min_element(mw.begin(), mw.end()));
}
