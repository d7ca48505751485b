#include <doctest.h>

#include <algorithm>
#include <random>

#include "pdmatch/bottleneck.hpp"
#include "pdmatch/errors.hpp"
#include "pdmatch/generate.hpp"
#include "pdmatch/oracle.hpp"
#include "support.hpp"

using namespace pdm;

namespace {

PersistenceDiagram diagram(std::vector<DiagramPoint> points) { return PersistenceDiagram(std::move(points)); }

const PersistenceDiagram kTwoA = diagram({{0, 2, 1}});
const PersistenceDiagram kTwoB = diagram({{0, 4, 1}});

double all_pairs_max(const MatchingInstance& inst)
{
    double best = 0.0;
    for (const Vertex& b : inst.bidders())
        for (const Vertex& o : inst.objects()) best = std::max(best, linf_distance(b.pos, o.pos));
    return best;
}

std::vector<double> admissible_weights(const MatchingInstance& inst, double a, double b)
{
    std::vector<double> out;
    for (VertexId i = 0; i < static_cast<VertexId>(inst.size()); ++i)
        for (VertexId j = 0; j < static_cast<VertexId>(inst.size()); ++j)
            if (inst.admissible(i, j)) {
                const double d = inst.distance(i, j);
                if (d > a && d <= b) out.push_back(d);
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TEST_CASE("three-approximation of the largest distance")
{
    {
        const MatchingInstance inst(diagram({{2, 6, 1}}), diagram({}), Exponent::bottleneck());
        const auto bounds = max_distance_3approx(inst);
        CHECK(bounds.lower == 2.0);
        CHECK(bounds.upper == 6.0);
    }
    {
        const MatchingInstance inst(kTwoA, kTwoA, Exponent::bottleneck());
        const auto bounds = max_distance_3approx(inst);
        const double dmax = all_pairs_max(inst);
        CHECK(bounds.lower <= dmax);
        CHECK(dmax <= bounds.upper);
    }
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const MatchingInstance inst(testing::random_diagram(rng, 50, 100, false),
                                    testing::random_diagram(rng, 50, 100, false), Exponent::bottleneck());
        const auto bounds = max_distance_3approx(inst);
        const double dmax = all_pairs_max(inst);
        CHECK(bounds.lower <= dmax);
        CHECK(dmax <= bounds.upper);
    }
}

TEST_CASE("feasibility on the two by two instance")
{
    const MatchingInstance inst(kTwoA, kTwoB, Exponent::bottleneck());
    for (const auto engine : {BottleneckEngine::Geometric, BottleneckEngine::NonGeometric}) {
        HopcroftKarp hk(inst, engine);
        CHECK(hk.feasible(2.0));
        CHECK(hk.matching_is_valid(2.0));
        CHECK_FALSE(hk.feasible(1.9));
        CHECK(hk.matching_is_valid(1.9));
        CHECK(hk.matching_size() == 1);
        CHECK(hk.feasible(max_distance_3approx(inst).upper));
    }
}

TEST_CASE("feasibility agrees with the explicit-graph oracle and between engines")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t nx = 1 + static_cast<std::size_t>(trial % 32);
        const std::size_t ny = 1 + static_cast<std::size_t>((trial * 7) % 32);
        const bool integral = trial % 2 == 0;
        const MatchingInstance inst(testing::random_diagram(rng, nx, 30, integral),
                                    testing::random_diagram(rng, ny, 30, integral), Exponent::bottleneck());
        const DenseCostMatrix costs = DenseCostMatrix::from_instance(inst);
        HopcroftKarp geo(inst, BottleneckEngine::Geometric);
        HopcroftKarp scan(inst, BottleneckEngine::NonGeometric);
        const double top = max_distance_3approx(inst).upper;
        std::uniform_real_distribution<double> radius(0.0, top);
        std::vector<double> radii;
        for (int k = 0; k < 12; ++k) radii.push_back(integral ? std::floor(radius(rng)) : radius(rng));
        const auto weights = admissible_weights(inst, -1.0, top);
        for (int k = 0; k < 6; ++k) radii.push_back(weights[static_cast<std::size_t>(k) * weights.size() / 6]);
        for (const double r : radii) {
            const bool expect = has_perfect_assignment(costs, r);
            CHECK(geo.feasible(r) == expect);
            CHECK(scan.feasible(r) == expect);
            CHECK(geo.matching_is_valid(r));
            CHECK(scan.matching_is_valid(r));
        }
        // Monotonicity along an increasing sweep.
        std::sort(radii.begin(), radii.end());
        bool seen_true = false;
        HopcroftKarp fresh(inst, BottleneckEngine::Geometric);
        for (const double r : radii) {
            const bool ok = fresh.feasible(r);
            if (seen_true) CHECK(ok);
            seen_true = seen_true || ok;
        }
    }
}

TEST_CASE("approximate bottleneck")
{
    CHECK_THROWS_AS(approx_bottleneck(kTwoA, kTwoB, 0.0), InvalidParameter);
    CHECK_THROWS_AS(approx_bottleneck(kTwoA, kTwoB, 1.0), InvalidParameter);
    {
        const auto r = approx_bottleneck(kTwoA, kTwoA, 0.01);
        CHECK(r.lower == 0.0);
        CHECK(r.upper == 0.0);
        const auto e = approx_bottleneck(diagram({}), diagram({}), 0.01);
        CHECK(e.upper == 0.0);
    }
    for (const auto engine : {BottleneckEngine::Geometric, BottleneckEngine::NonGeometric}) {
        const auto r = approx_bottleneck(kTwoA, kTwoB, 0.01, {engine, 200});
        CHECK(r.upper >= 2.0);
        CHECK(r.upper < 2.02);
        CHECK(r.lower < 2.0);
    }
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const auto x = gen_normal(4 + static_cast<std::size_t>(trial) * 2, 100, 100 + static_cast<std::uint64_t>(trial));
        const auto y = gen_normal(3 + static_cast<std::size_t>(trial) * 2, 100, 900 + static_cast<std::uint64_t>(trial));
        const double o = oracle_bottleneck(x, y);
        for (const auto engine : {BottleneckEngine::Geometric, BottleneckEngine::NonGeometric}) {
            const auto r = approx_bottleneck(x, y, 0.01, {engine, 200});
            CHECK(r.lower < o);
            CHECK(o <= r.upper);
            CHECK(r.upper < 1.01 * o);
        }
    }
}

TEST_CASE("candidate distances")
{
    const MatchingInstance two(kTwoA, kTwoB, Exponent::bottleneck());
    CHECK(candidate_distances(two, 1.5, 2.5) == std::vector<double>{2.0});
    CHECK(candidate_distances(two, 0.5, 1.0) == std::vector<double>{1.0});
    CHECK(candidate_distances(two, 0.0, 0.9).empty());
    CHECK_THROWS_AS(candidate_distances(two, 2.0, 1.0), InvalidParameter);

    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 6; ++trial) {
        const bool integral = trial % 2 == 0;
        const MatchingInstance inst(testing::random_diagram(rng, 100, 60, integral),
                                    testing::random_diagram(rng, 100, 60, integral), Exponent::bottleneck());
        std::uniform_real_distribution<double> u(0.0, 40.0);
        double a = integral ? std::floor(u(rng)) : u(rng);
        double b = integral ? std::floor(u(rng)) : u(rng);
        if (a > b) std::swap(a, b);
        if (a == b) b += 3;
        CHECK(candidate_distances(inst, a, b) == admissible_weights(inst, a, b));
    }
}

TEST_CASE("exact bottleneck")
{
    CHECK(exact_bottleneck(kTwoA, kTwoB, 0.01) == 2.0);
    CHECK(exact_bottleneck(diagram({{2, 6, 1}}), diagram({}), 0.01) == 2.0);
    CHECK(exact_bottleneck(kTwoA, kTwoA, 0.5) == 0.0);
    CHECK(exact_bottleneck(diagram({}), diagram({}), 0.5) == 0.0);
    CHECK(exact_bottleneck(diagram({{1, 3, 2}, {0, 9, 1}}), diagram({{1, 3, 2}, {0, 9, 1}}), 0.1) == 0.0);

    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 40; ++trial) {
        const bool integral = trial % 3 == 0;
        const auto x = testing::random_diagram(rng, 1 + static_cast<std::size_t>(trial), 50, integral, 2);
        const auto y = testing::random_diagram(rng, 2 + static_cast<std::size_t>(trial / 2), 50, integral, 2);
        const double o = oracle_bottleneck(x, y);
        for (const auto engine : {BottleneckEngine::Geometric, BottleneckEngine::NonGeometric}) {
            for (const double delta : {0.5, 0.01}) {
                const auto interval = approx_bottleneck(x, y, delta, {engine, 200});
                const double exact = exact_bottleneck(x, y, delta, {engine, 200});
                CHECK(exact == o);
                CHECK(interval.lower < exact);
                CHECK(exact <= interval.upper);
            }
        }
    }
}
