#include "pdmatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pdmatch/errors.hpp"

namespace pdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kCrossCheckSize = 8;

bool augment(std::size_t row, const std::vector<std::vector<std::size_t>>& adj, std::vector<std::size_t>& row_of,
             std::vector<bool>& seen)
{
    for (const std::size_t col : adj[row]) {
        if (seen[col]) continue;
        seen[col] = true;
        if (row_of[col] == SIZE_MAX || augment(row_of[col], adj, row_of, seen)) {
            row_of[col] = row;
            return true;
        }
    }
    return false;
}

bool threshold_matching(const DenseCostMatrix& costs, double r)
{
    const std::size_t n = costs.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (costs(i, j) <= r) adj[i].push_back(j);
    std::vector<std::size_t> row_of(n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> seen(n, false);
        if (!augment(i, adj, row_of, seen)) return false;
    }
    return true;
}

}  // namespace

DenseCostMatrix::DenseCostMatrix(std::size_t n) : n_(n), data_(n * n, kInf) {}

DenseCostMatrix DenseCostMatrix::from_instance(const MatchingInstance& instance)
{
    const std::size_t n = instance.size();
    DenseCostMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex& b = instance.bidder(static_cast<VertexId>(i));
        for (std::size_t j = 0; j < n; ++j) {
            const Vertex& o = instance.object(static_cast<VertexId>(j));
            if (b.is_diagonal() && o.is_diagonal()) {
                m(i, j) = 0.0;
            } else if (b.is_diagonal() != o.is_diagonal() && b.partner != static_cast<VertexId>(j)) {
                continue;
            } else {
                m(i, j) = instance.exponent().apply(linf_distance(b.pos, o.pos));
            }
        }
    }
    return m;
}

DenseCostMatrix DenseCostMatrix::from_mass_instance(const MassInstance& instance)
{
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < instance.bidder_count(); ++i)
        rows.insert(rows.end(), static_cast<std::size_t>(instance.bidder_mass(i)), i);
    for (std::size_t j = 0; j < instance.object_count(); ++j)
        cols.insert(cols.end(), static_cast<std::size_t>(instance.object_mass(j)), j);
    if (rows.size() != cols.size()) throw ContractViolation("mass instance sides differ in total mass");
    DenseCostMatrix m(rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b) m(a, b) = instance.cost(rows[a], cols[b]);
    return m;
}

OracleAssignment hungarian(const DenseCostMatrix& costs)
{
    const std::size_t n = costs.size();
    OracleAssignment result;
    if (n == 0) return result;

    double largest = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::isfinite(costs(i, j))) largest = std::max(largest, costs(i, j));
    const double sentinel = static_cast<double>(n) * largest + 2.0;
    const auto a = [&](std::size_t i, std::size_t j) {
        const double c = costs(i - 1, j - 1);
        return std::isfinite(c) ? c : sentinel;
    };

    // Rows and columns are 1-based; column 0 is a virtual start.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<bool> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    result.column_of.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) result.column_of[p[j] - 1] = j - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = costs(i, result.column_of[i]);
        if (!std::isfinite(c)) throw std::runtime_error("no assignment avoids forbidden entries");
        result.cost += c;
    }
    return result;
}

double brute_force_assignment(const DenseCostMatrix& costs)
{
    const std::size_t n = costs.size();
    if (n > 10) throw InvalidParameter("brute force assignment is limited to n <= 10");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = n == 0 ? 0.0 : kInf;
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += costs(i, perm[i]);
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double brute_force_bottleneck(const DenseCostMatrix& costs)
{
    const std::size_t n = costs.size();
    if (n > 10) throw InvalidParameter("brute force assignment is limited to n <= 10");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = n == 0 ? 0.0 : kInf;
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, costs(i, perm[i]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool has_perfect_assignment(const DenseCostMatrix& costs, double r) { return threshold_matching(costs, r); }

double bottleneck_assignment(const DenseCostMatrix& costs)
{
    const std::size_t n = costs.size();
    if (n == 0) return 0.0;
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::isfinite(costs(i, j))) values.push_back(costs(i, j));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::size_t lo = 0;
    std::size_t hi = values.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (threshold_matching(costs, values[mid])) hi = mid;
        else lo = mid + 1;
    }
    if (lo == values.size()) throw std::runtime_error("no perfect assignment exists");
    return values[lo];
}

double oracle_wasserstein(const PersistenceDiagram& x, const PersistenceDiagram& y, double q)
{
    if (x.empty() && y.empty()) return 0.0;
    const MatchingInstance instance(x, y, Exponent(q));
    const DenseCostMatrix costs = DenseCostMatrix::from_instance(instance);
    const double total = hungarian(costs).cost;
    if (costs.size() <= kCrossCheckSize) {
        const double reference = brute_force_assignment(costs);
        if (std::fabs(total - reference) > 1e-12 * std::max(1.0, reference))
            throw std::logic_error("Hungarian optimum disagrees with permutation enumeration");
    }
    return q == 1.0 ? total : std::pow(total, 1.0 / q);
}

double oracle_wasserstein_relaxed(const PersistenceDiagram& x, const PersistenceDiagram& y, double q)
{
    if (x.empty() && y.empty()) return 0.0;
    const MassInstance instance(x, y, Exponent(q));
    const double total = hungarian(DenseCostMatrix::from_mass_instance(instance)).cost;
    return q == 1.0 ? total : std::pow(total, 1.0 / q);
}

double oracle_bottleneck(const PersistenceDiagram& x, const PersistenceDiagram& y)
{
    if (x.empty() && y.empty()) return 0.0;
    const MatchingInstance instance(x, y, Exponent::bottleneck());
    const DenseCostMatrix costs = DenseCostMatrix::from_instance(instance);
    const double value = bottleneck_assignment(costs);
    if (costs.size() <= kCrossCheckSize && value != brute_force_bottleneck(costs))
        throw std::logic_error("bottleneck oracle disagrees with permutation enumeration");
    return value;
}

}  // namespace pdm
