#include <algorithm>
#include <numeric>
#include <random>

#include "pdmatch/auction.hpp"
#include "pdmatch/errors.hpp"

namespace pdm {

Auction::Auction(const MatchingInstance& instance, AuctionEngine engine, std::optional<std::uint64_t> shuffle_seed)
    : instance_(instance),
      q_(instance.exponent().value()),
      prices_(instance.size(), 0.0),
      engine_(make_bidding_engine(engine, instance, prices_)),
      object_of_(instance.size(), -1),
      bidder_of_(instance.size(), -1),
      seed_(shuffle_seed)
{
}

void Auction::set_epsilon(double epsilon)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidParameter("epsilon must be positive and finite");
    epsilon_ = epsilon;
}

Bid Auction::bid(VertexId bidder)
{
    const BestOffers offers = engine_->best_two(bidder);
    Bid result{offers.best.object, epsilon_};
    if (offers.second) {
        const double gap = offers.second->total - offers.best.total;
        round_max_gap_ = std::max(round_max_gap_, gap);
        result.increment = gap + epsilon_;
    } else {
        result.increment = epsilon_ + round_max_gap_;
    }
    return result;
}

void Auction::assign(VertexId bidder, const Bid& bid)
{
    const auto o = static_cast<std::size_t>(bid.object);
    const VertexId previous = bidder_of_[o];
    if (previous >= 0) {
        object_of_[static_cast<std::size_t>(previous)] = -1;
        unassigned_.push_back(previous);
    }
    bidder_of_[o] = bidder;
    object_of_[static_cast<std::size_t>(bidder)] = bid.object;
    prices_[o] += bid.increment;
    engine_->price_changed(bid.object);
    ++bids_;
}

void Auction::begin_round()
{
    if (!(epsilon_ > 0.0)) throw ContractViolation("a round requires a positive epsilon");
    std::fill(object_of_.begin(), object_of_.end(), -1);
    std::fill(bidder_of_.begin(), bidder_of_.end(), -1);
    std::vector<VertexId> order(instance_.size());
    std::iota(order.begin(), order.end(), 0);
    if (seed_) {
        std::mt19937_64 rng(*seed_ + round_);
        std::shuffle(order.begin(), order.end(), rng);
    }
    unassigned_.assign(order.begin(), order.end());
    round_max_gap_ = 0.0;
    ++round_;
}

bool Auction::step()
{
    if (unassigned_.empty()) return false;
    const VertexId bidder = unassigned_.front();
    unassigned_.pop_front();
    assign(bidder, bid(bidder));
    return true;
}

void Auction::run_round()
{
    begin_round();
    while (step()) {
    }
}

double Auction::assignment_cost() const
{
    double total = 0.0;
    for (std::size_t b = 0; b < object_of_.size(); ++b) {
        if (object_of_[b] < 0) continue;
        total += instance_.weight(static_cast<VertexId>(b), object_of_[b]);
    }
    return total;
}

bool Auction::assignment_is_perfect() const
{
    for (std::size_t b = 0; b < object_of_.size(); ++b) {
        const VertexId o = object_of_[b];
        if (o < 0 || bidder_of_[static_cast<std::size_t>(o)] != static_cast<VertexId>(b)) return false;
        if (!instance_.admissible(static_cast<VertexId>(b), o)) return false;
    }
    return true;
}

bool Auction::epsilon_complementary_slackness(double tolerance) const
{
    const auto n = static_cast<VertexId>(instance_.size());
    for (VertexId b = 0; b < n; ++b) {
        const VertexId mine = object_of(b);
        if (mine < 0) continue;
        const double value = -(instance_.weight(b, mine) + prices_[static_cast<std::size_t>(mine)]);
        for (VertexId o = 0; o < n; ++o) {
            if (!instance_.admissible(b, o)) continue;
            const double other = -(instance_.weight(b, o) + prices_[static_cast<std::size_t>(o)]);
            if (value < other - epsilon_ - tolerance) return false;
        }
    }
    return true;
}

double max_edge_cost(const MatchingInstance& instance)
{
    const std::size_t nx = instance.offdiag_bidder_count();
    const std::size_t ny = instance.offdiag_object_count();
    double longest = 0.0;
    if (nx > 0 && ny > 0) {
        Box bidders;
        Box objects;
        for (std::size_t i = 0; i < nx; ++i) bidders.extend(instance.bidder(static_cast<VertexId>(i)).pos);
        for (std::size_t j = 0; j < ny; ++j) objects.extend(instance.object(static_cast<VertexId>(j)).pos);
        longest = std::max({longest, bidders.max_x - objects.min_x, objects.max_x - bidders.min_x,
                            bidders.max_y - objects.min_y, objects.max_y - bidders.min_y});
    }
    for (std::size_t i = 0; i < instance.size(); ++i) {
        const auto b = static_cast<VertexId>(i);
        longest = std::max(longest, instance.distance(b, instance.bidder(b).partner));
    }
    return instance.exponent().apply(longest);
}

namespace detail {

void validate_wasserstein_parameters(double q, double delta)
{
    if (!std::isfinite(q) || q < 1.0) throw InvalidParameter("q must be a finite real >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
}

}  // namespace detail

WassersteinResult wasserstein_detailed(const PersistenceDiagram& x, const PersistenceDiagram& y, double q,
                                       double delta, const AuctionOptions& options)
{
    detail::validate_wasserstein_parameters(q, delta);
    WassersteinResult result;
    if (x.empty() && y.empty()) return result;

    const MatchingInstance instance(x, y, Exponent(q));
    result.size = instance.size();
    result.max_edge_cost = max_edge_cost(instance);
    if (result.max_edge_cost == 0.0) return result;

    Auction auction(instance, options.engine, options.shuffle_seed);
    result.value_entries = auction.value_entries();
    const auto n = static_cast<double>(instance.size());
    double epsilon = result.max_edge_cost / 4.0;
    for (;;) {
        auction.set_epsilon(epsilon);
        const std::uint64_t before = auction.bids();
        auction.run_round();
        RoundRecord round;
        round.epsilon = epsilon;
        round.cost = auction.assignment_cost();
        round.bids = auction.bids() - before;
        round.stop = round.cost == 0.0 || detail::auction_should_stop(round.cost, n, epsilon, delta, q);
        result.rounds.push_back(round);
        if (round.stop) {
            result.distance = detail::qth_root(round.cost, q);
            return result;
        }
        epsilon /= 5.0;
        if (!(epsilon > 0.0)) throw std::runtime_error("epsilon underflowed before the auction converged");
    }
}

double wasserstein(const PersistenceDiagram& x, const PersistenceDiagram& y, double q, double delta,
                   const AuctionOptions& options)
{
    return wasserstein_detailed(x, y, q, delta, options).distance;
}

}  // namespace pdm
