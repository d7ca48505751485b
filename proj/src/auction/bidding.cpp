#include <set>
#include <utility>

#include "pdmatch/auction.hpp"
#include "pdmatch/errors.hpp"
#include "pdmatch/kdtree.hpp"

namespace pdm {

namespace {

void consider(BestOffers& out, bool& have_best, Offer offer)
{
    if (!have_best) {
        out.best = offer;
        have_best = true;
    } else if (offer.better_than(out.best)) {
        out.second = out.best;
        out.best = offer;
    } else if (!out.second || offer.better_than(*out.second)) {
        out.second = offer;
    }
}

// Shared by both engines: diagonal objects ordered by price, which is all a
// diagonal bidder needs besides its own partner.
class EngineBase : public BiddingEngine {
public:
    EngineBase(const MatchingInstance& instance, const std::vector<double>& prices)
        : instance_(instance), prices_(prices), q_(instance.exponent().value()),
          n_y_(static_cast<VertexId>(instance.offdiag_object_count())),
          diag_price_(instance.size() - instance.offdiag_object_count())
    {
        for (VertexId o = n_y_; o < static_cast<VertexId>(instance.size()); ++o) {
            diag_price_[static_cast<std::size_t>(o - n_y_)] = price(o);
            diagonal_.insert({price(o), o});
        }
    }

    BestOffers best_two(VertexId bidder) final
    {
        const Vertex& b = instance_.bidder(bidder);
        if (!b.is_diagonal()) return offdiag_best_two(bidder);
        BestOffers out;
        bool have = false;
        consider(out, have, partner_offer(bidder));
        auto it = diagonal_.begin();
        for (int k = 0; k < 2 && it != diagonal_.end(); ++k, ++it)
            consider(out, have, {it->second, pow_q(0.0, q_) + it->first});
        return out;
    }

    void price_changed(VertexId object) final
    {
        if (object >= n_y_) {
            auto& stored = diag_price_[static_cast<std::size_t>(object - n_y_)];
            diagonal_.erase({stored, object});
            stored = price(object);
            diagonal_.insert({stored, object});
        }
        offdiag_price_changed(object);
    }

protected:
    virtual BestOffers offdiag_best_two(VertexId bidder) = 0;
    virtual void offdiag_price_changed(VertexId object) = 0;

    double price(VertexId object) const { return prices_[static_cast<std::size_t>(object)]; }
    Offer offer(VertexId bidder, VertexId object) const
    {
        return {object, pow_q(instance_.distance_unchecked(bidder, object), q_) + price(object)};
    }
    Offer partner_offer(VertexId bidder) const { return offer(bidder, instance_.bidder(bidder).partner); }
    std::size_t diagonal_entries() const noexcept { return diagonal_.size(); }

    const MatchingInstance& instance_;
    const std::vector<double>& prices_;
    double q_;
    VertexId n_y_;

private:
    std::vector<double> diag_price_;
    std::set<std::pair<double, VertexId>> diagonal_;
};

class GeometricEngine final : public EngineBase {
public:
    GeometricEngine(const MatchingInstance& instance, const std::vector<double>& prices)
        : EngineBase(instance, prices)
    {
        std::vector<Point2> points;
        std::vector<double> weights;
        for (VertexId o = 0; o < n_y_; ++o) {
            points.push_back(instance.object(o).pos);
            weights.push_back(price(o));
        }
        tree_ = WeightedKdTree(points, weights);
    }

    std::size_t value_entries() const override { return tree_.size() + diagonal_entries(); }

protected:
    BestOffers offdiag_best_two(VertexId bidder) override
    {
        BestOffers out;
        bool have = false;
        consider(out, have, partner_offer(bidder));
        const auto found = tree_.best_two(instance_.bidder(bidder).pos, q_);
        if (found.best) consider(out, have, {found.best->id, found.best->total});
        if (found.second) consider(out, have, {found.second->id, found.second->total});
        return out;
    }

    void offdiag_price_changed(VertexId object) override
    {
        if (object < n_y_) tree_.increase_weight(object, price(object));
    }

private:
    WeightedKdTree tree_;
};

// Every off-diagonal bidder owns a binary min-heap over all its admissible
// objects (the off-diagonal ones and its own projection). Price changes go to a
// global log; a bidder replays the part of the log it has not yet seen before
// reading its heap, or rebuilds the heap when that part is longer than the heap.
class LazyHeapEngine final : public EngineBase {
    struct Entry {
        double total;
        VertexId object;

        bool before(const Entry& other) const noexcept
        {
            return total < other.total || (total == other.total && object < other.object);
        }
    };

public:
    LazyHeapEngine(const MatchingInstance& instance, const std::vector<double>& prices)
        : EngineBase(instance, prices),
          n_x_(instance.offdiag_bidder_count()),
          width_(instance.offdiag_object_count() + 1),
          heap_(n_x_ * width_),
          slot_(n_x_ * width_),
          cursor_(n_x_, 0),
          stamp_(instance.size(), 0)
    {
        for (std::size_t b = 0; b < n_x_; ++b) rebuild(static_cast<VertexId>(b));
    }

    std::size_t value_entries() const override { return heap_.size() + diagonal_entries(); }

protected:
    BestOffers offdiag_best_two(VertexId bidder) override
    {
        const auto b = static_cast<std::size_t>(bidder);
        const std::size_t pending = log_.size() - cursor_[b];
        if (pending >= width_) {
            rebuild(bidder);
        } else if (pending > 0) {
            ++pass_;
            const VertexId partner = instance_.bidder(bidder).partner;
            for (std::size_t k = cursor_[b]; k < log_.size(); ++k) {
                const VertexId o = log_[k];
                auto& seen = stamp_[static_cast<std::size_t>(o)];
                if (seen == pass_) continue;
                seen = pass_;
                if (o < n_y_) refresh(bidder, static_cast<std::size_t>(o));
                else if (o == partner) refresh(bidder, width_ - 1);
            }
        }
        cursor_[b] = log_.size();

        const Entry* h = heap_.data() + b * width_;
        BestOffers out;
        out.best = {h[0].object, h[0].total};
        if (width_ > 1) {
            std::size_t s = 1;
            if (width_ > 2 && h[2].before(h[1])) s = 2;
            out.second = Offer{h[s].object, h[s].total};
        }
        return out;
    }

    void offdiag_price_changed(VertexId object) override { log_.push_back(object); }

private:
    std::size_t local_of(VertexId object) const
    {
        return object < n_y_ ? static_cast<std::size_t>(object) : width_ - 1;
    }

    void rebuild(VertexId bidder)
    {
        const auto b = static_cast<std::size_t>(bidder);
        Entry* h = heap_.data() + b * width_;
        std::int32_t* s = slot_.data() + b * width_;
        for (VertexId o = 0; o < n_y_; ++o) h[o] = {offer(bidder, o).total, o};
        const Offer p = partner_offer(bidder);
        h[width_ - 1] = {p.total, p.object};
        for (std::size_t k = 0; k < width_; ++k) s[local_of(h[k].object)] = static_cast<std::int32_t>(k);
        for (std::size_t k = width_ / 2; k-- > 0;) sift_down(h, s, k);
    }

    void refresh(VertexId bidder, std::size_t local)
    {
        const auto b = static_cast<std::size_t>(bidder);
        Entry* h = heap_.data() + b * width_;
        std::int32_t* s = slot_.data() + b * width_;
        const auto k = static_cast<std::size_t>(s[local]);
        const double updated = offer(bidder, h[k].object).total;
        if (updated < h[k].total) throw ContractViolation("object value increased while prices only rise");
        h[k].total = updated;
        sift_down(h, s, k);
    }

    void sift_down(Entry* h, std::int32_t* s, std::size_t k) const
    {
        const Entry moving = h[k];
        for (;;) {
            std::size_t child = 2 * k + 1;
            if (child >= width_) break;
            if (child + 1 < width_ && h[child + 1].before(h[child])) ++child;
            if (!h[child].before(moving)) break;
            h[k] = h[child];
            s[local_of(h[k].object)] = static_cast<std::int32_t>(k);
            k = child;
        }
        h[k] = moving;
        s[local_of(moving.object)] = static_cast<std::int32_t>(k);
    }

    std::size_t n_x_;
    std::size_t width_;
    std::vector<Entry> heap_;
    std::vector<std::int32_t> slot_;
    std::vector<std::size_t> cursor_;
    std::vector<VertexId> log_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t pass_ = 0;
};

}  // namespace

std::unique_ptr<BiddingEngine> make_bidding_engine(AuctionEngine engine, const MatchingInstance& instance,
                                                   const std::vector<double>& prices)
{
    if (prices.size() != instance.size()) throw InvalidParameter("one price per object is required");
    switch (engine) {
    case AuctionEngine::Geometric: return std::make_unique<GeometricEngine>(instance, prices);
    case AuctionEngine::LazyHeap: return std::make_unique<LazyHeapEngine>(instance, prices);
    }
    throw InvalidParameter("unknown auction engine");
}

}  // namespace pdm
