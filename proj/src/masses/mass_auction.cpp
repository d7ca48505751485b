#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>

#include "pdmatch/errors.hpp"
#include "pdmatch/masses.hpp"

namespace pdm {

namespace {

struct Candidate {
    std::int32_t slice;
    double total;  // cost + price, i.e. minus the value to the bidder
};

}  // namespace

// Yields the slices not owned by one bidder in increasing (total, object, seq)
// order, which is decreasing value with deterministic tie-breaking.
class MassAuction::Stream {
public:
    Stream(const MassAuction& auction, std::int32_t bidder) : a_(auction), bidder_(bidder)
    {
        if (bidder == a_.diagonal_bidder_) {
            diag_bidder_it_ = a_.diagonal_bidder_candidates_.begin();
            return;
        }
        const auto& nodes = a_.tree_.nodes();
        if (!nodes.empty()) push_node(0);
        if (a_.diagonal_object_ >= 0) {
            diag_it_ = a_.diagonal_object_slices_.begin();
            push_diagonal();
        }
    }

    std::optional<Candidate> next()
    {
        if (bidder_ == a_.diagonal_bidder_) {
            if (diag_bidder_it_ == a_.diagonal_bidder_candidates_.end()) return std::nullopt;
            const auto& [total, object, seq, id] = *diag_bidder_it_++;
            return Candidate{id, total};
        }
        while (!heap_.empty()) {
            const Item item = heap_.top();
            heap_.pop();
            if (item.kind == kNode) {
                expand(item.ref);
                continue;
            }
            if (item.object == a_.diagonal_object_) {
                ++diag_it_;
                push_diagonal();
            }
            return Candidate{item.ref, item.key};
        }
        return std::nullopt;
    }

private:
    static constexpr int kNode = 0;
    static constexpr int kSlice = 1;

    struct Item {
        double key;
        int kind;
        std::int32_t object;
        std::uint64_t seq;
        std::int32_t ref;

        bool after(const Item& o) const noexcept
        {
            return std::tie(key, kind, object, seq) > std::tie(o.key, o.kind, o.object, o.seq);
        }
    };
    struct After {
        bool operator()(const Item& l, const Item& r) const noexcept { return l.after(r); }
    };

    void push_node(std::int32_t index)
    {
        const auto i = static_cast<std::size_t>(index);
        const KdNode& node = a_.tree_.nodes()[i];
        const double q = a_.instance_.exponent().value();
        const Point2 p = a_.instance_.offdiag_bidders()[static_cast<std::size_t>(bidder_)].pos;
        heap_.push({pow_q(node.box.linf_distance(p), q) + a_.tree_.subtree_min_weight(i), kNode, -1, 0, index});
    }

    void expand(std::int32_t index)
    {
        const KdNode& node = a_.tree_.nodes()[static_cast<std::size_t>(index)];
        if (!node.is_leaf()) {
            push_node(node.left);
            push_node(node.right);
            return;
        }
        for (const PointId object : a_.tree_.points_of(node)) {
            for (const std::int32_t id : a_.object_slices_[static_cast<std::size_t>(object)]) {
                const Slice& s = a_.slices_[static_cast<std::size_t>(id)];
                if (s.owner == bidder_) continue;
                heap_.push({a_.slice_total(bidder_, id), kSlice, object, s.seq, id});
            }
        }
    }

    void push_diagonal()
    {
        while (diag_it_ != a_.diagonal_object_slices_.end()) {
            const std::int32_t id = std::get<2>(*diag_it_);
            const Slice& s = a_.slices_[static_cast<std::size_t>(id)];
            if (s.owner != bidder_) {
                heap_.push({a_.slice_total(bidder_, id), kSlice, s.object, s.seq, id});
                return;
            }
            ++diag_it_;
        }
    }

    const MassAuction& a_;
    std::int32_t bidder_;
    std::priority_queue<Item, std::vector<Item>, After> heap_;
    std::set<DiagonalObjectKey>::const_iterator diag_it_;
    std::set<DiagonalBidderKey>::const_iterator diag_bidder_it_;
};

MassAuction::MassAuction(const MassInstance& instance, MassAuctionOptions options)
    : instance_(instance),
      options_(options),
      bidder_count_(static_cast<std::int32_t>(instance.bidder_count())),
      object_count_(static_cast<std::int32_t>(instance.object_count())),
      diagonal_bidder_(instance.has_diagonal_bidder() ? static_cast<std::int32_t>(instance.offdiag_bidder_count())
                                                      : -1),
      diagonal_object_(instance.has_diagonal_object() ? static_cast<std::int32_t>(instance.offdiag_object_count())
                                                      : -1),
      object_slices_(static_cast<std::size_t>(object_count_)),
      owned_(static_cast<std::size_t>(bidder_count_)),
      owned_mass_(static_cast<std::size_t>(bidder_count_), 0),
      queued_(static_cast<std::size_t>(bidder_count_), false)
{
    if (instance.exponent().is_bottleneck()) throw InvalidParameter("the mass auction needs a finite exponent");
    std::vector<SliceSpec> initial;
    for (std::int32_t j = 0; j < object_count_; ++j)
        initial.push_back({j, instance.object_mass(static_cast<std::size_t>(j)), 0.0, -1});
    load(initial);
}

void MassAuction::set_epsilon(double epsilon)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidParameter("epsilon must be positive and finite");
    epsilon_ = epsilon;
}

double MassAuction::slice_total(std::int32_t bidder, std::int32_t id) const
{
    const Slice& s = slices_[static_cast<std::size_t>(id)];
    return instance_.cost(static_cast<std::size_t>(bidder), static_cast<std::size_t>(s.object)) + s.price;
}

void MassAuction::index(std::int32_t id)
{
    const Slice& s = slices_[static_cast<std::size_t>(id)];
    if (s.object == diagonal_object_) diagonal_object_slices_.insert({s.price, s.seq, id});
    if (diagonal_bidder_ >= 0 && s.owner != diagonal_bidder_)
        diagonal_bidder_candidates_.insert({slice_total(diagonal_bidder_, id), s.object, s.seq, id});
}

void MassAuction::unindex(std::int32_t id)
{
    const Slice& s = slices_[static_cast<std::size_t>(id)];
    if (s.object == diagonal_object_) diagonal_object_slices_.erase({s.price, s.seq, id});
    if (diagonal_bidder_ >= 0 && s.owner != diagonal_bidder_)
        diagonal_bidder_candidates_.erase({slice_total(diagonal_bidder_, id), s.object, s.seq, id});
}

std::int32_t MassAuction::create_slice(std::int32_t object, std::int64_t mass, double price, std::int32_t owner)
{
    std::int32_t id;
    if (!free_.empty()) {
        id = free_.back();
        free_.pop_back();
    } else {
        id = static_cast<std::int32_t>(slices_.size());
        slices_.emplace_back();
        alive_.push_back(false);
    }
    slices_[static_cast<std::size_t>(id)] = {object, mass, price, owner, next_seq_++};
    alive_[static_cast<std::size_t>(id)] = true;
    ++live_;
    object_slices_[static_cast<std::size_t>(object)].push_back(id);
    if (owner >= 0) owned_[static_cast<std::size_t>(owner)].push_back(id);
    index(id);
    return id;
}

void MassAuction::destroy_slice(std::int32_t id)
{
    unindex(id);
    const Slice& s = slices_[static_cast<std::size_t>(id)];
    const auto erase_from = [id](std::vector<std::int32_t>& v) { v.erase(std::find(v.begin(), v.end(), id)); };
    erase_from(object_slices_[static_cast<std::size_t>(s.object)]);
    if (s.owner >= 0) erase_from(owned_[static_cast<std::size_t>(s.owner)]);
    alive_[static_cast<std::size_t>(id)] = false;
    free_.push_back(id);
    --live_;
}

void MassAuction::enqueue(std::int32_t bidder)
{
    if (queued_[static_cast<std::size_t>(bidder)]) return;
    queued_[static_cast<std::size_t>(bidder)] = true;
    queue_.push_back(bidder);
}

void MassAuction::refresh_tree_weight(std::int32_t object)
{
    if (object == diagonal_object_) return;
    double lowest = std::numeric_limits<double>::infinity();
    for (const std::int32_t id : object_slices_[static_cast<std::size_t>(object)])
        lowest = std::min(lowest, slices_[static_cast<std::size_t>(id)].price);
    if (lowest != tree_.weight(object)) tree_.increase_weight(object, lowest);
}

void MassAuction::reset_structures()
{
    diagonal_object_slices_.clear();
    diagonal_bidder_candidates_.clear();
    for (std::size_t id = 0; id < slices_.size(); ++id)
        if (alive_[id]) index(static_cast<std::int32_t>(id));

    const std::size_t offdiag = instance_.offdiag_object_count();
    std::vector<Point2> points(offdiag);
    std::vector<double> weights(offdiag, std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < offdiag; ++j) {
        points[j] = instance_.offdiag_objects()[j].pos;
        for (const std::int32_t id : object_slices_[j])
            weights[j] = std::min(weights[j], slices_[static_cast<std::size_t>(id)].price);
    }
    tree_ = WeightedKdTree(points, weights);
}

void MassAuction::load(const std::vector<SliceSpec>& specs)
{
    std::vector<std::int64_t> object_total(static_cast<std::size_t>(object_count_), 0);
    std::vector<std::int64_t> bidder_total(static_cast<std::size_t>(bidder_count_), 0);
    std::set<std::pair<std::int32_t, std::int32_t>> owner_object;
    for (const SliceSpec& s : specs) {
        if (s.object < 0 || s.object >= object_count_) throw InvalidParameter("slice object out of range");
        if (s.mass <= 0) throw InvalidParameter("slice mass must be positive");
        if (!(s.price >= 0.0) || !std::isfinite(s.price)) throw InvalidParameter("slice price must be finite and >= 0");
        if (s.owner < -1 || s.owner >= bidder_count_) throw InvalidParameter("slice owner out of range");
        object_total[static_cast<std::size_t>(s.object)] += s.mass;
        if (s.owner >= 0) {
            bidder_total[static_cast<std::size_t>(s.owner)] += s.mass;
            if (!owner_object.insert({s.owner, s.object}).second)
                throw InvalidParameter("a bidder may own at most one slice per object");
        }
    }
    for (std::int32_t j = 0; j < object_count_; ++j)
        if (object_total[static_cast<std::size_t>(j)] != instance_.object_mass(static_cast<std::size_t>(j)))
            throw InvalidParameter("slice masses must add up to the object mass");
    for (std::int32_t i = 0; i < bidder_count_; ++i)
        if (bidder_total[static_cast<std::size_t>(i)] > instance_.bidder_mass(static_cast<std::size_t>(i)))
            throw InvalidParameter("a bidder cannot own more than its mass");

    slices_.clear();
    alive_.clear();
    free_.clear();
    live_ = 0;
    next_seq_ = 0;
    for (auto& v : object_slices_) v.clear();
    for (auto& v : owned_) v.clear();
    diagonal_object_slices_.clear();
    diagonal_bidder_candidates_.clear();
    for (const SliceSpec& s : specs) create_slice(s.object, s.mass, s.price, s.owner);
    owned_mass_ = bidder_total;
    reset_structures();

    queue_.clear();
    std::fill(queued_.begin(), queued_.end(), false);
    for (std::int32_t i = 0; i < bidder_count_; ++i)
        if (unassigned_mass(i) > 0) enqueue(i);
}

std::int64_t MassAuction::unassigned_mass(std::int32_t bidder) const
{
    return instance_.bidder_mass(static_cast<std::size_t>(bidder)) - owned_mass_[static_cast<std::size_t>(bidder)];
}

void MassAuction::bid(std::int32_t bidder)
{
    if (bidder < 0 || bidder >= bidder_count_) throw InvalidParameter("bidder out of range");
    const std::int64_t missing = unassigned_mass(bidder);
    if (missing <= 0) throw ContractViolation("bid requires unassigned mass");
    if (!(epsilon_ > 0.0)) throw ContractViolation("bid requires a positive epsilon");

    struct Take {
        std::int32_t slice;
        std::int64_t amount;
        double total;
    };
    Stream stream(*this, bidder);
    std::vector<Take> taken;
    std::int64_t need = missing;
    bool split = false;
    while (need > 0) {
        const auto c = stream.next();
        if (!c) throw std::logic_error("not enough mass available for a bid");
        const std::int64_t mass = slices_[static_cast<std::size_t>(c->slice)].mass;
        const std::int64_t amount = std::min(mass, need);
        split = amount < mass;
        taken.push_back({c->slice, amount, c->total});
        need -= amount;
    }

    std::int32_t only = -1;
    bool several = false;
    const auto note_object = [&](std::int32_t id) {
        const std::int32_t o = slices_[static_cast<std::size_t>(id)].object;
        if (only < 0) only = o;
        else if (o != only) several = true;
    };
    for (const std::int32_t id : owned_[static_cast<std::size_t>(bidder)]) note_object(id);
    for (const Take& t : taken) note_object(t.slice);

    std::optional<double> limit_total;
    if (several) {
        if (split) {
            limit_total = taken.back().total;
        } else if (const auto c = stream.next()) {
            limit_total = c->total;
        }
    } else {
        while (const auto c = stream.next()) {
            if (slices_[static_cast<std::size_t>(c->slice)].object != only) {
                limit_total = c->total;
                break;
            }
        }
    }
    double threshold;
    if (limit_total) {
        threshold = *limit_total + epsilon_;
    } else {
        // Nothing left to compare against: bring every slice up to the least
        // valuable one the bidder holds, plus epsilon.
        double worst = -std::numeric_limits<double>::infinity();
        for (const std::int32_t id : owned_[static_cast<std::size_t>(bidder)])
            worst = std::max(worst, slice_total(bidder, id));
        for (const Take& t : taken) worst = std::max(worst, t.total);
        threshold = worst + epsilon_;
    }

    for (const Take& t : taken) {
        Slice& s = slices_[static_cast<std::size_t>(t.slice)];
        const std::int32_t previous = s.owner;
        if (previous >= 0) {
            owned_mass_[static_cast<std::size_t>(previous)] -= t.amount;
            enqueue(previous);
        }
        if (t.amount < s.mass) {
            s.mass -= t.amount;
            const std::int32_t object = s.object;
            const double price = s.price;
            create_slice(object, t.amount, price, bidder);
        } else {
            unindex(t.slice);
            if (previous >= 0) {
                auto& list = owned_[static_cast<std::size_t>(previous)];
                list.erase(std::find(list.begin(), list.end(), t.slice));
            }
            s.owner = bidder;
            owned_[static_cast<std::size_t>(bidder)].push_back(t.slice);
            index(t.slice);
        }
        owned_mass_[static_cast<std::size_t>(bidder)] += t.amount;
    }

    std::vector<std::int32_t> mine = owned_[static_cast<std::size_t>(bidder)];
    std::sort(mine.begin(), mine.end(), [&](std::int32_t l, std::int32_t r) {
        const Slice& a = slices_[static_cast<std::size_t>(l)];
        const Slice& b = slices_[static_cast<std::size_t>(r)];
        return std::tie(a.object, a.seq) < std::tie(b.object, b.seq);
    });
    for (std::size_t first = 0; first < mine.size();) {
        const std::int32_t object = slices_[static_cast<std::size_t>(mine[first])].object;
        std::size_t last = first;
        double price = threshold - instance_.cost(static_cast<std::size_t>(bidder), static_cast<std::size_t>(object));
        std::int64_t mass = 0;
        while (last < mine.size() && slices_[static_cast<std::size_t>(mine[last])].object == object) {
            const Slice& s = slices_[static_cast<std::size_t>(mine[last])];
            price = std::max(price, s.price);
            mass += s.mass;
            ++last;
        }
        const std::int32_t keep = mine[first];
        for (std::size_t k = first + 1; k < last; ++k) destroy_slice(mine[k]);
        unindex(keep);
        slices_[static_cast<std::size_t>(keep)].price = price;
        slices_[static_cast<std::size_t>(keep)].mass = mass;
        index(keep);
        refresh_tree_weight(object);
        first = last;
    }

    ++bids_;
    if (options_.audit && !audit()) throw ContractViolation("mass auction invariant violated after a bid");
}

void MassAuction::merge_unassigned()
{
    for (auto& ids : object_slices_) {
        std::vector<std::int32_t> sorted = ids;
        std::sort(sorted.begin(), sorted.end(), [&](std::int32_t l, std::int32_t r) {
            const Slice& a = slices_[static_cast<std::size_t>(l)];
            const Slice& b = slices_[static_cast<std::size_t>(r)];
            return std::tie(a.price, a.seq) < std::tie(b.price, b.seq);
        });
        for (std::size_t k = 1; k < sorted.size(); ++k) {
            Slice& keep = slices_[static_cast<std::size_t>(sorted[k - 1])];
            Slice& s = slices_[static_cast<std::size_t>(sorted[k])];
            if (s.price != keep.price) continue;
            // Absorb into the earlier slice and carry it forward.
            keep.mass += s.mass;
            destroy_slice(sorted[k]);
            sorted[k] = sorted[k - 1];
        }
    }
}

void MassAuction::run_round()
{
    if (!(epsilon_ > 0.0)) throw ContractViolation("run_round requires a positive epsilon");
    diagonal_bidder_candidates_.clear();
    diagonal_object_slices_.clear();
    for (std::size_t id = 0; id < slices_.size(); ++id)
        if (alive_[id]) slices_[id].owner = -1;
    for (auto& v : owned_) v.clear();
    std::fill(owned_mass_.begin(), owned_mass_.end(), 0);
    merge_unassigned();
    reset_structures();

    std::vector<std::int32_t> order(static_cast<std::size_t>(bidder_count_));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(options_.seed + round_);
    std::shuffle(order.begin(), order.end(), rng);
    queue_.clear();
    std::fill(queued_.begin(), queued_.end(), false);
    for (const std::int32_t i : order) enqueue(i);
    finish_round();
    ++round_;
}

void MassAuction::finish_round()
{
    while (!queue_.empty()) {
        const std::int32_t bidder = queue_.front();
        queue_.pop_front();
        queued_[static_cast<std::size_t>(bidder)] = false;
        if (unassigned_mass(bidder) > 0) bid(bidder);
    }
}

double MassAuction::assignment_cost() const
{
    double total = 0.0;
    for (std::size_t id = 0; id < slices_.size(); ++id) {
        if (!alive_[id] || slices_[id].owner < 0) continue;
        const Slice& s = slices_[id];
        total += static_cast<double>(s.mass) *
                 instance_.cost(static_cast<std::size_t>(s.owner), static_cast<std::size_t>(s.object));
    }
    return total;
}

bool MassAuction::is_perfect() const
{
    for (std::int32_t i = 0; i < bidder_count_; ++i)
        if (unassigned_mass(i) != 0) return false;
    return true;
}

std::vector<Slice> MassAuction::slices() const
{
    std::vector<Slice> out;
    for (std::size_t id = 0; id < slices_.size(); ++id)
        if (alive_[id]) out.push_back(slices_[id]);
    std::sort(out.begin(), out.end(), [](const Slice& a, const Slice& b) { return a.seq < b.seq; });
    return out;
}

bool MassAuction::audit() const
{
    if (live_ > static_cast<std::size_t>(instance_.total_mass())) return false;
    std::vector<std::int64_t> object_total(static_cast<std::size_t>(object_count_), 0);
    std::vector<std::int64_t> bidder_total(static_cast<std::size_t>(bidder_count_), 0);
    std::size_t alive = 0;
    std::size_t diag_object = 0;
    std::size_t diag_candidates = 0;
    for (std::size_t id = 0; id < slices_.size(); ++id) {
        if (!alive_[id]) continue;
        ++alive;
        const Slice& s = slices_[id];
        const auto sid = static_cast<std::int32_t>(id);
        if (s.mass < 1 || !(s.price >= 0.0) || !std::isfinite(s.price)) return false;
        if (s.object < 0 || s.object >= object_count_) return false;
        const auto& of_object = object_slices_[static_cast<std::size_t>(s.object)];
        if (std::count(of_object.begin(), of_object.end(), sid) != 1) return false;
        object_total[static_cast<std::size_t>(s.object)] += s.mass;
        if (s.owner >= 0) {
            const auto& of_owner = owned_[static_cast<std::size_t>(s.owner)];
            if (std::count(of_owner.begin(), of_owner.end(), sid) != 1) return false;
            bidder_total[static_cast<std::size_t>(s.owner)] += s.mass;
        }
        if (s.object == diagonal_object_) {
            ++diag_object;
            if (!diagonal_object_slices_.count({s.price, s.seq, sid})) return false;
        }
        if (diagonal_bidder_ >= 0 && s.owner != diagonal_bidder_) {
            ++diag_candidates;
            if (!diagonal_bidder_candidates_.count({slice_total(diagonal_bidder_, sid), s.object, s.seq, sid}))
                return false;
        }
    }
    if (alive != live_) return false;
    if (diag_object != diagonal_object_slices_.size()) return false;
    if (diag_candidates != diagonal_bidder_candidates_.size()) return false;

    for (std::int32_t j = 0; j < object_count_; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        if (object_total[sj] != instance_.object_mass(sj)) return false;
        if (j == diagonal_object_) continue;
        double lowest = std::numeric_limits<double>::infinity();
        for (const std::int32_t id : object_slices_[sj]) lowest = std::min(lowest, slices_[static_cast<std::size_t>(id)].price);
        if (tree_.weight(j) != lowest) return false;
    }
    if (!tree_.audit()) return false;

    for (std::int32_t i = 0; i < bidder_count_; ++i) {
        const auto si = static_cast<std::size_t>(i);
        if (bidder_total[si] != owned_mass_[si]) return false;
        if (owned_mass_[si] > instance_.bidder_mass(si)) return false;
        if (owned_mass_[si] < instance_.bidder_mass(si) && !queued_[si]) return false;
        std::vector<std::int32_t> objects;
        for (const std::int32_t id : owned_[si]) {
            if (!alive_[static_cast<std::size_t>(id)]) return false;
            objects.push_back(slices_[static_cast<std::size_t>(id)].object);
        }
        std::sort(objects.begin(), objects.end());
        if (std::adjacent_find(objects.begin(), objects.end()) != objects.end()) return false;
    }
    return true;
}

double max_edge_cost(const MassInstance& instance)
{
    const auto bidders = instance.offdiag_bidders();
    const auto objects = instance.offdiag_objects();
    double longest = 0.0;
    if (!bidders.empty() && !objects.empty()) {
        Box b;
        Box o;
        for (const auto& p : bidders) b.extend(p.pos);
        for (const auto& p : objects) o.extend(p.pos);
        longest = std::max({longest, b.max_x - o.min_x, o.max_x - b.min_x, b.max_y - o.min_y, o.max_y - b.min_y});
    }
    for (const auto& p : bidders) longest = std::max(longest, linf_distance(p.pos, diagonal_projection(p.pos)));
    for (const auto& p : objects) longest = std::max(longest, linf_distance(diagonal_projection(p.pos), p.pos));
    return instance.exponent().apply(longest);
}

WassersteinResult wasserstein_masses_detailed(const PersistenceDiagram& x, const PersistenceDiagram& y, double q,
                                              double delta, const MassAuctionOptions& options)
{
    detail::validate_wasserstein_parameters(q, delta);
    WassersteinResult result;
    if (x.empty() && y.empty()) return result;

    const MassInstance instance(x, y, Exponent(q));
    result.size = static_cast<std::size_t>(instance.total_mass());
    result.max_edge_cost = max_edge_cost(instance);
    if (result.max_edge_cost == 0.0) return result;

    MassAuction auction(instance, options);
    const auto n = static_cast<double>(instance.total_mass());
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
        result.value_entries = std::max(result.value_entries, auction.slice_count());
        if (round.stop) {
            result.distance = detail::qth_root(round.cost, q);
            return result;
        }
        epsilon /= 5.0;
        if (!(epsilon > 0.0)) throw std::runtime_error("epsilon underflowed before the auction converged");
    }
}

double wasserstein_masses(const PersistenceDiagram& x, const PersistenceDiagram& y, double q, double delta,
                          const MassAuctionOptions& options)
{
    return wasserstein_masses_detailed(x, y, q, delta, options).distance;
}

}  // namespace pdm
