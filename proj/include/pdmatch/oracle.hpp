#pragma once

#include <cstddef>
#include <vector>

#include "pdmatch/diagram.hpp"
#include "pdmatch/instance.hpp"

namespace pdm {

/// Square matrix of assignment costs. Forbidden pairs hold +infinity.
class DenseCostMatrix {
public:
    explicit DenseCostMatrix(std::size_t n = 0);

    /// w^q for admissible pairs of the instance, +infinity for skew pairs.
    /// With Exponent::bottleneck() the entries are plain distances.
    static DenseCostMatrix from_instance(const MatchingInstance& instance);
    /// The relaxed costs of the multi-point instance with every multi-point
    /// expanded into unit copies, so row/column counts equal the total mass.
    static DenseCostMatrix from_mass_instance(const MassInstance& instance);

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

struct OracleAssignment {
    std::vector<std::size_t> column_of;  // column assigned to each row
    double cost = 0.0;                   // sum of the chosen entries, in row order
};

/// Minimum-cost perfect assignment by the O(n^3) Hungarian method with
/// potentials. Forbidden entries are replaced by a sentinel larger than any
/// assignment of finite entries; throws std::runtime_error if the optimum
/// still uses one.
OracleAssignment hungarian(const DenseCostMatrix& costs);

/// Minimum over all n! permutations; n <= 10.
double brute_force_assignment(const DenseCostMatrix& costs);

/// Minimum over all n! permutations of the largest chosen entry; n <= 10.
double brute_force_bottleneck(const DenseCostMatrix& costs);

/// Whether the entries <= r admit a perfect assignment (augmenting paths on the
/// explicit threshold graph).
bool has_perfect_assignment(const DenseCostMatrix& costs, double r);

/// Minimum over perfect assignments of the largest chosen entry: binary search
/// over the sorted distinct finite entries, each step an augmenting-path
/// maximum matching on the explicit threshold graph.
double bottleneck_assignment(const DenseCostMatrix& costs);

/// Exact q-Wasserstein distance (q-th root of the Hungarian optimum). For
/// n <= 8 the optimum is also checked against brute_force_assignment() and a
/// std::logic_error is thrown if they disagree beyond 1e-12 relative.
double oracle_wasserstein(const PersistenceDiagram& x, const PersistenceDiagram& y, double q);
/// Same value computed on the relaxed multi-point costs.
double oracle_wasserstein_relaxed(const PersistenceDiagram& x, const PersistenceDiagram& y, double q);
/// Exact bottleneck distance; for n <= 8 checked against brute_force_bottleneck().
double oracle_bottleneck(const PersistenceDiagram& x, const PersistenceDiagram& y);

}  // namespace pdm
