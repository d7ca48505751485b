#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <vector>

#include "pdmatch/diagram.hpp"
#include "pdmatch/instance.hpp"

namespace pdm {

enum class AuctionEngine {
    Geometric,  // weighted k-d tree over off-diagonal objects
    LazyHeap,   // one heap of all admissible objects per off-diagonal bidder
};

/// One object offered to a bidder; `total` = w^q + price, i.e. minus its value.
struct Offer {
    VertexId object = -1;
    double total = 0.0;

    bool better_than(const Offer& other) const noexcept
    {
        return total < other.total || (total == other.total && object < other.object);
    }
};

struct BestOffers {
    Offer best;
    std::optional<Offer> second;
};

class BiddingEngine {
public:
    virtual ~BiddingEngine() = default;
    /// The two best admissible objects for `bidder` under the current prices.
    virtual BestOffers best_two(VertexId bidder) = 0;
    /// Called after every price change.
    virtual void price_changed(VertexId object) = 0;
    /// Number of stored (object, value) records; the memory footprint of the engine.
    virtual std::size_t value_entries() const = 0;
};

std::unique_ptr<BiddingEngine> make_bidding_engine(AuctionEngine engine, const MatchingInstance& instance,
                                                   const std::vector<double>& prices);

struct Bid {
    VertexId object = -1;
    double increment = 0.0;
};

/// Gauss-Seidel auction state for a MatchingInstance: one bid per iteration,
/// prices carried across epsilon-scaling rounds, minimization of sum w^q.
class Auction {
public:
    /// `shuffle_seed` (if set) shuffles the bidder queue at the start of each round.
    Auction(const MatchingInstance& instance, AuctionEngine engine,
            std::optional<std::uint64_t> shuffle_seed = std::nullopt);

    double epsilon() const noexcept { return epsilon_; }
    void set_epsilon(double epsilon);

    /// The object `bidder` would bid for, and the price increment
    /// (best value - second best value) + epsilon. With a single admissible
    /// object the increment is epsilon plus the largest gap seen this round.
    Bid bid(VertexId bidder);

    /// Clears the assignment and bids until every bidder is assigned.
    void run_round();

    /// run_round() one bid at a time: begin_round() clears the assignment and
    /// queues every bidder; step() processes one bidder and returns false once
    /// the queue was already empty.
    void begin_round();
    bool step();

    double assignment_cost() const;
    const std::vector<double>& prices() const noexcept { return prices_; }
    VertexId object_of(VertexId bidder) const { return object_of_[static_cast<std::size_t>(bidder)]; }
    VertexId bidder_of(VertexId object) const { return bidder_of_[static_cast<std::size_t>(object)]; }
    bool assignment_is_perfect() const;
    std::uint64_t bids() const noexcept { return bids_; }
    std::size_t value_entries() const { return engine_->value_entries(); }

    /// Every assigned bidder's value is within epsilon (+ tolerance) of its best
    /// admissible value. Brute force over all admissible pairs.
    bool epsilon_complementary_slackness(double tolerance) const;

private:
    void assign(VertexId bidder, const Bid& bid);

    const MatchingInstance& instance_;
    double q_;
    std::vector<double> prices_;
    std::unique_ptr<BiddingEngine> engine_;
    std::vector<VertexId> object_of_;
    std::vector<VertexId> bidder_of_;
    std::deque<VertexId> unassigned_;
    std::optional<std::uint64_t> seed_;
    std::uint64_t round_ = 0;
    std::uint64_t bids_ = 0;
    double epsilon_ = 0.0;
    double round_max_gap_ = 0.0;
};

/// One epsilon-scaling round as observed by the driver.
struct RoundRecord {
    double epsilon = 0.0;
    double cost = 0.0;     // sum of w^q over the assignment, i.e. d^q
    bool stop = false;     // d^q <= (1 + delta)^q (d^q - n epsilon)
    std::uint64_t bids = 0;
};

struct WassersteinResult {
    double distance = 0.0;
    double max_edge_cost = 0.0;
    std::size_t size = 0;  // n in the stopping rule
    std::vector<RoundRecord> rounds;
    std::size_t value_entries = 0;
};

struct AuctionOptions {
    AuctionEngine engine = AuctionEngine::Geometric;
    std::optional<std::uint64_t> shuffle_seed;
};

/// Largest w^q over all admissible bidder/object pairs.
double max_edge_cost(const MatchingInstance& instance);

/// Approximate q-Wasserstein distance d with o <= d < (1 + delta) o.
/// epsilon starts at max_edge_cost / 4 and is divided by 5 after every round
/// that fails the stopping rule. Requires q >= 1 and delta in (0, 1).
WassersteinResult wasserstein_detailed(const PersistenceDiagram& x, const PersistenceDiagram& y, double q,
                                       double delta, const AuctionOptions& options = {});
double wasserstein(const PersistenceDiagram& x, const PersistenceDiagram& y, double q, double delta,
                   const AuctionOptions& options = {});

namespace detail {

/// The stopping rule shared by both auctions.
inline bool auction_should_stop(double cost, double n, double epsilon, double delta, double q)
{
    return cost <= pow_q(1.0 + delta, q) * (cost - n * epsilon);
}

inline double qth_root(double value, double q)
{
    if (q == 1.0) return value;
    if (q == 2.0) return std::sqrt(value);
    return std::pow(value, 1.0 / q);
}

void validate_wasserstein_parameters(double q, double delta);

}  // namespace detail

}  // namespace pdm
