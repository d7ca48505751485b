#pragma once

#include <cstdint>
#include <deque>
#include <set>
#include <tuple>
#include <vector>

#include "pdmatch/auction.hpp"
#include "pdmatch/diagram.hpp"
#include "pdmatch/instance.hpp"
#include "pdmatch/kdtree.hpp"

namespace pdm {

inline constexpr std::uint64_t kDefaultMassSeed = 0x9e3779b97f4a7c15ULL;

/// A part of a multi-object that the auction does not (yet) distinguish.
struct Slice {
    std::int32_t object = -1;
    std::int64_t mass = 0;
    double price = 0.0;
    std::int32_t owner = -1;  // multi-bidder, or -1 when unassigned
    std::uint64_t seq = 0;    // creation index, breaks value ties
};

/// Description of a slice for MassAuction::load().
struct SliceSpec {
    std::int32_t object = -1;
    std::int64_t mass = 0;
    double price = 0.0;
    std::int32_t owner = -1;
};

struct MassAuctionOptions {
    std::uint64_t seed = kDefaultMassSeed;
    /// Run audit() after every bid and throw ContractViolation on failure.
    bool audit = false;
};

/// Gauss-Seidel auction over multi-bidders and multi-objects of a MassInstance.
class MassAuction {
public:
    MassAuction(const MassInstance& instance, MassAuctionOptions options = {});

    double epsilon() const noexcept { return epsilon_; }
    void set_epsilon(double epsilon);

    /// Replaces the state with the given slices; every object's slice masses
    /// must sum to its mass and no bidder may own more than its mass. Prices
    /// must be non-negative. Bidders with missing mass are queued in id order.
    void load(const std::vector<SliceSpec>& slices);

    /// One iteration for `bidder`, which must have unassigned mass.
    void bid(std::int32_t bidder);

    /// Unassigns all mass, merges equal-price slices of each object and bids
    /// until the assignment is perfect.
    void run_round();

    /// Bids until no bidder has unassigned mass.
    void finish_round();

    double assignment_cost() const;
    bool is_perfect() const;
    std::int64_t unassigned_mass(std::int32_t bidder) const;
    std::int64_t owned_mass(std::int32_t bidder) const { return owned_mass_[static_cast<std::size_t>(bidder)]; }
    std::vector<Slice> slices() const;
    std::size_t slice_count() const noexcept { return live_; }
    std::uint64_t bids() const noexcept { return bids_; }
    const MassInstance& instance() const noexcept { return instance_; }

    /// Checks every structural invariant: per-object mass conservation,
    /// owned-mass bookkeeping, one slice per (bidder, object), k-d tree
    /// weights equal to the cheapest slice, index sets in sync.
    bool audit() const;

private:
    using DiagonalObjectKey = std::tuple<double, std::uint64_t, std::int32_t>;
    using DiagonalBidderKey = std::tuple<double, std::int32_t, std::uint64_t, std::int32_t>;
    class Stream;

    std::int32_t create_slice(std::int32_t object, std::int64_t mass, double price, std::int32_t owner);
    void destroy_slice(std::int32_t id);
    void index(std::int32_t id);
    void unindex(std::int32_t id);
    void enqueue(std::int32_t bidder);
    void refresh_tree_weight(std::int32_t object);
    void merge_unassigned();
    void reset_structures();
    double slice_total(std::int32_t bidder, std::int32_t id) const;

    const MassInstance& instance_;
    MassAuctionOptions options_;
    std::int32_t bidder_count_;
    std::int32_t object_count_;
    std::int32_t diagonal_bidder_;  // -1 if absent
    std::int32_t diagonal_object_;  // -1 if absent

    std::vector<Slice> slices_;
    std::vector<bool> alive_;
    std::vector<std::int32_t> free_;
    std::size_t live_ = 0;
    std::uint64_t next_seq_ = 0;

    std::vector<std::vector<std::int32_t>> object_slices_;
    std::vector<std::vector<std::int32_t>> owned_;
    std::vector<std::int64_t> owned_mass_;
    std::vector<bool> queued_;
    std::deque<std::int32_t> queue_;

    WeightedKdTree tree_;
    std::set<DiagonalObjectKey> diagonal_object_slices_;
    std::set<DiagonalBidderKey> diagonal_bidder_candidates_;

    double epsilon_ = 0.0;
    std::uint64_t round_ = 0;
    std::uint64_t bids_ = 0;
};

/// Largest relaxed cost over all multi-bidder/multi-object pairs; equal to
/// max_edge_cost() of the expanded instance.
double max_edge_cost(const MassInstance& instance);

WassersteinResult wasserstein_masses_detailed(const PersistenceDiagram& x, const PersistenceDiagram& y, double q,
                                              double delta, const MassAuctionOptions& options = {});
double wasserstein_masses(const PersistenceDiagram& x, const PersistenceDiagram& y, double q, double delta,
                          const MassAuctionOptions& options = {});

}  // namespace pdm
