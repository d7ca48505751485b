#include <doctest.h>

#include <random>

#include "pdmatch/oracle.hpp"
#include "support.hpp"

using namespace pdm;

namespace {

PersistenceDiagram diagram(std::vector<DiagramPoint> points) { return PersistenceDiagram(std::move(points)); }

DenseCostMatrix random_matrix(std::mt19937_64& rng, std::size_t n, bool holes)
{
    DenseCostMatrix m(n);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_int_distribution<int> coin(0, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = holes && i != j && coin(rng) == 0 ? std::numeric_limits<double>::infinity() : u(rng);
    return m;
}

}  // namespace

TEST_CASE("oracle examples")
{
    const auto a = diagram({{0, 2, 1}});
    const auto b = diagram({{0, 4, 1}});
    CHECK(oracle_wasserstein(a, b, 1.0) == 2.0);
    CHECK(oracle_bottleneck(a, b) == 2.0);
    CHECK(oracle_wasserstein(b, b, 2.0) == 0.0);
    CHECK(oracle_bottleneck(b, b) == 0.0);
    CHECK(oracle_wasserstein(diagram({{2, 6, 1}}), diagram({}), 1.0) == 2.0);
    CHECK(oracle_wasserstein(diagram({}), diagram({}), 1.0) == 0.0);
}

TEST_CASE("hungarian matches brute force")
{
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        const auto m = random_matrix(rng, 1 + static_cast<std::size_t>(trial % 8), trial % 2 == 0);
        const auto h = hungarian(m);
        CHECK(h.cost == doctest::Approx(brute_force_assignment(m)).epsilon(1e-12));
        double sum = 0.0;
        std::vector<bool> used(m.size(), false);
        for (std::size_t i = 0; i < m.size(); ++i) {
            REQUIRE_FALSE(used[h.column_of[i]]);
            used[h.column_of[i]] = true;
            sum += m(i, h.column_of[i]);
        }
        CHECK(sum == h.cost);
    }
}

TEST_CASE("threshold matching bottleneck matches brute force")
{
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 60; ++trial) {
        const auto m = random_matrix(rng, 1 + static_cast<std::size_t>(trial % 8), trial % 2 == 0);
        const double b = bottleneck_assignment(m);
        CHECK(b == brute_force_bottleneck(m));
        CHECK(has_perfect_assignment(m, b));
        CHECK_FALSE(has_perfect_assignment(m, std::nextafter(b, 0.0)));
    }
}

TEST_CASE("relaxed costs give the same optimum as expanded diagrams")
{
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 25; ++trial) {
        const auto x = testing::random_diagram(rng, 1 + static_cast<std::size_t>(trial % 6), 30, true, 4);
        const auto y = testing::random_diagram(rng, static_cast<std::size_t>(trial % 5), 30, true, 4);
        for (const double q : {1.0, 2.0}) {
            const MassInstance relaxed(x, y, Exponent(q));
            const MatchingInstance plain(x.expanded(), y.expanded(), Exponent(q));
            CHECK(hungarian(DenseCostMatrix::from_mass_instance(relaxed)).cost ==
                  hungarian(DenseCostMatrix::from_instance(plain)).cost);
            CHECK(oracle_wasserstein_relaxed(x, y, q) == oracle_wasserstein(x, y, q));
        }
        const MassInstance relaxed(x, y, Exponent::bottleneck());
        CHECK(bottleneck_assignment(DenseCostMatrix::from_mass_instance(relaxed)) == oracle_bottleneck(x, y));
    }
}

TEST_CASE("bottleneck is at most every wasserstein distance")
{
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 25; ++trial) {
        const auto x = testing::random_diagram(rng, 1 + static_cast<std::size_t>(trial % 12), 50, false);
        const auto y = testing::random_diagram(rng, 1 + static_cast<std::size_t>((trial * 7) % 12), 50, false);
        const double inf = oracle_bottleneck(x, y);
        for (const double q : {1.0, 2.0, 3.5}) CHECK(inf <= oracle_wasserstein(x, y, q) * (1 + 1e-12));
    }
}
