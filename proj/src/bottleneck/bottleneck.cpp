#include "pdmatch/bottleneck.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "pdmatch/errors.hpp"
#include "pdmatch/kdtree.hpp"

namespace pdm {

/// Where Hopcroft-Karp looks up the neighbors of a bidder in G[r]. One pool
/// holds every object during the layering pass; the path search then uses one
/// pool per layer. An object handed out is removed from its pool for the rest
/// of the phase.
class HopcroftKarp::NeighborSource {
public:
    explicit NeighborSource(const MatchingInstance& instance) : instance_(instance), taken_(instance.size(), 0) {}
    virtual ~NeighborSource() = default;

    void set_radius(double r) { radius_ = r; }

    virtual void begin_layering() = 0;
    /// Appends every remaining neighbor of `bidder` to `out` and removes them.
    virtual void take_all(VertexId bidder, std::vector<VertexId>& out) = 0;
    virtual void begin_paths(const std::vector<std::vector<VertexId>>& layers) = 0;
    /// Some remaining neighbor of `bidder` in `layer`, removed on return.
    virtual std::optional<VertexId> take_one(VertexId bidder, std::size_t layer) = 0;

protected:
    bool within(VertexId bidder, VertexId object) const
    {
        return instance_.distance_unchecked(bidder, object) <= radius_;
    }

    const MatchingInstance& instance_;
    double radius_ = 0.0;
    std::vector<std::uint8_t> taken_;
};

namespace {

class GeometricSource final : public HopcroftKarp::NeighborSource {
public:
    explicit GeometricSource(const MatchingInstance& instance)
        : NeighborSource(instance), layer_of_(instance.size(), -1), local_of_(instance.size(), -1)
    {
        std::vector<Point2> pts;
        for (std::size_t j = 0; j < instance.offdiag_object_count(); ++j) {
            pts.push_back(instance.object(static_cast<VertexId>(j)).pos);
            local_of_[j] = static_cast<std::int32_t>(j);
        }
        all_.tree = DeletableKdTree(pts);
        for (std::size_t j = 0; j < instance.offdiag_object_count(); ++j)
            all_.global.push_back(static_cast<VertexId>(j));
    }

    void begin_layering() override
    {
        std::fill(taken_.begin(), taken_.end(), 0);
        std::fill(layer_of_.begin(), layer_of_.end(), kAll);
        for (std::size_t j = 0; j < instance_.offdiag_object_count(); ++j) local_of_[j] = static_cast<std::int32_t>(j);
        all_.tree.restore_all();
        all_.diagonal.clear();
        for (std::size_t j = instance_.size(); j-- > instance_.offdiag_object_count();)
            all_.diagonal.push_back(static_cast<VertexId>(j));
    }

    void take_all(VertexId bidder, std::vector<VertexId>& out) override
    {
        while (auto o = take_from(all_, kAll, bidder)) out.push_back(*o);
    }

    void begin_paths(const std::vector<std::vector<VertexId>>& layers) override
    {
        std::fill(taken_.begin(), taken_.end(), 0);
        layers_.resize(layers.size());
        std::vector<Point2> pts;
        for (std::size_t l = 0; l < layers.size(); ++l) {
            Pool& pool = layers_[l];
            pool.global.clear();
            pool.diagonal.clear();
            pts.clear();
            for (VertexId o : layers[l]) {
                layer_of_[static_cast<std::size_t>(o)] = static_cast<std::int32_t>(l);
                if (instance_.object(o).is_diagonal()) {
                    pool.diagonal.push_back(o);
                } else {
                    local_of_[static_cast<std::size_t>(o)] = static_cast<std::int32_t>(pool.global.size());
                    pool.global.push_back(o);
                    pts.push_back(instance_.object(o).pos);
                }
            }
            pool.tree = DeletableKdTree(pts);
        }
    }

    std::optional<VertexId> take_one(VertexId bidder, std::size_t layer) override
    {
        return take_from(layers_[layer], static_cast<std::int32_t>(layer), bidder);
    }

private:
    static constexpr std::int32_t kAll = -2;

    struct Pool {
        DeletableKdTree tree;            // off-diagonal objects of the pool
        std::vector<VertexId> global;    // tree point id -> object id
        std::vector<VertexId> diagonal;  // projections of the pool (may hold taken ones)
    };

    void take(Pool& pool, VertexId o)
    {
        taken_[static_cast<std::size_t>(o)] = 1;
        if (!instance_.object(o).is_diagonal()) pool.tree.remove(local_of_[static_cast<std::size_t>(o)]);
    }

    bool available(VertexId o, std::int32_t layer) const
    {
        return !taken_[static_cast<std::size_t>(o)] && layer_of_[static_cast<std::size_t>(o)] == layer;
    }

    std::optional<VertexId> take_from(Pool& pool, std::int32_t layer, VertexId bidder)
    {
        const Vertex& b = instance_.bidder(bidder);
        if (b.is_diagonal()) {
            // Every projection is at distance 0 from a diagonal bidder.
            while (!pool.diagonal.empty()) {
                const VertexId o = pool.diagonal.back();
                pool.diagonal.pop_back();
                if (available(o, layer)) {
                    take(pool, o);
                    return o;
                }
            }
            if (available(b.partner, layer) && within(bidder, b.partner)) {
                take(pool, b.partner);
                return b.partner;
            }
            return std::nullopt;
        }
        if (available(b.partner, layer) && within(bidder, b.partner)) {
            take(pool, b.partner);
            return b.partner;
        }
        if (const auto local = pool.tree.query_within(b.pos, radius_)) {
            const VertexId o = pool.global[static_cast<std::size_t>(*local)];
            take(pool, o);
            return o;
        }
        return std::nullopt;
    }

    Pool all_;
    std::vector<Pool> layers_;
    std::vector<std::int32_t> layer_of_;
    std::vector<std::int32_t> local_of_;
};

class ScanSource final : public HopcroftKarp::NeighborSource {
public:
    using NeighborSource::NeighborSource;

    void begin_layering() override
    {
        std::fill(taken_.begin(), taken_.end(), 0);
        all_.resize(instance_.size());
        for (std::size_t j = 0; j < all_.size(); ++j) all_[j] = static_cast<VertexId>(j);
    }

    void take_all(VertexId bidder, std::vector<VertexId>& out) override
    {
        std::size_t keep = 0;
        for (const VertexId o : all_) {
            if (instance_.admissible(bidder, o) && within(bidder, o)) {
                taken_[static_cast<std::size_t>(o)] = 1;
                out.push_back(o);
            } else {
                all_[keep++] = o;
            }
        }
        all_.resize(keep);
    }

    void begin_paths(const std::vector<std::vector<VertexId>>& layers) override
    {
        std::fill(taken_.begin(), taken_.end(), 0);
        layers_ = layers;
    }

    std::optional<VertexId> take_one(VertexId bidder, std::size_t layer) override
    {
        auto& pool = layers_[layer];
        for (std::size_t k = 0; k < pool.size();) {
            const VertexId o = pool[k];
            if (taken_[static_cast<std::size_t>(o)]) {
                pool[k] = pool.back();
                pool.pop_back();
                continue;
            }
            if (instance_.admissible(bidder, o) && within(bidder, o)) {
                taken_[static_cast<std::size_t>(o)] = 1;
                pool[k] = pool.back();
                pool.pop_back();
                return o;
            }
            ++k;
        }
        return std::nullopt;
    }

private:
    std::vector<VertexId> all_;
    std::vector<std::vector<VertexId>> layers_;
};

}  // namespace

HopcroftKarp::HopcroftKarp(const MatchingInstance& instance, BottleneckEngine engine)
    : instance_(&instance),
      engine_(engine),
      mate_bidder_(instance.size(), -1),
      mate_object_(instance.size(), -1)
{
    if (engine == BottleneckEngine::Geometric) source_ = std::make_unique<GeometricSource>(instance);
    else source_ = std::make_unique<ScanSource>(instance);
}

HopcroftKarp::~HopcroftKarp() = default;
HopcroftKarp::HopcroftKarp(HopcroftKarp&&) noexcept = default;
HopcroftKarp& HopcroftKarp::operator=(HopcroftKarp&&) noexcept = default;

void HopcroftKarp::unmatch_heavier_than(double r)
{
    for (std::size_t b = 0; b < mate_bidder_.size(); ++b) {
        const VertexId o = mate_bidder_[b];
        if (o >= 0 && instance_->distance_unchecked(static_cast<VertexId>(b), o) > r) {
            mate_bidder_[b] = -1;
            mate_object_[static_cast<std::size_t>(o)] = -1;
            --matched_;
        }
    }
}

bool HopcroftKarp::feasible(double r)
{
    if (r < 0) throw InvalidParameter("radius must be non-negative");
    unmatch_heavier_than(r);
    source_->set_radius(r);
    const std::size_t n = instance_->size();
    while (matched_ < n && run_phase()) {
    }
    return matched_ == n;
}

bool HopcroftKarp::run_phase()
{
    ++phases_;
    layers_.clear();
    source_->begin_layering();

    // Layering: free bidders, the objects they reach, the owners of those objects, ...
    std::vector<VertexId> free_bidders;
    for (std::size_t b = 0; b < mate_bidder_.size(); ++b)
        if (mate_bidder_[b] < 0) free_bidders.push_back(static_cast<VertexId>(b));

    std::vector<VertexId> frontier = free_bidders;
    bool reached_free = false;
    while (!frontier.empty()) {
        scratch_.clear();
        for (const VertexId b : frontier) source_->take_all(b, scratch_);
        if (scratch_.empty()) break;
        std::vector<VertexId> free_objects;
        for (const VertexId o : scratch_)
            if (mate_object_[static_cast<std::size_t>(o)] < 0) free_objects.push_back(o);
        if (!free_objects.empty()) {
            layers_.push_back(std::move(free_objects));
            reached_free = true;
            break;
        }
        layers_.push_back(scratch_);
        frontier.clear();
        for (const VertexId o : layers_.back()) frontier.push_back(mate_object_[static_cast<std::size_t>(o)]);
    }
    if (!reached_free) return false;

    // Vertex-disjoint shortest augmenting paths, one depth-first search per free bidder.
    source_->begin_paths(layers_);
    const std::size_t last = layers_.size() - 1;
    std::vector<std::pair<VertexId, VertexId>> path;
    bool augmented = false;
    for (const VertexId start : free_bidders) {
        path.clear();
        VertexId bidder = start;
        std::size_t layer = 0;
        while (true) {
            const auto object = source_->take_one(bidder, layer);
            if (!object) {
                if (path.empty()) break;
                bidder = path.back().first;
                path.pop_back();
                --layer;
                continue;
            }
            path.emplace_back(bidder, *object);
            if (layer == last) {
                for (const auto& [b, o] : path) {
                    mate_bidder_[static_cast<std::size_t>(b)] = o;
                    mate_object_[static_cast<std::size_t>(o)] = b;
                }
                ++matched_;
                augmented = true;
                break;
            }
            bidder = mate_object_[static_cast<std::size_t>(*object)];
            ++layer;
        }
    }
    return augmented;
}

bool HopcroftKarp::matching_is_valid(double r) const
{
    std::size_t count = 0;
    for (std::size_t b = 0; b < mate_bidder_.size(); ++b) {
        const VertexId o = mate_bidder_[b];
        if (o < 0) continue;
        ++count;
        if (mate_object_[static_cast<std::size_t>(o)] != static_cast<VertexId>(b)) return false;
        if (!instance_->admissible(static_cast<VertexId>(b), o)) return false;
        if (instance_->distance(static_cast<VertexId>(b), o) > r) return false;
    }
    for (std::size_t o = 0; o < mate_object_.size(); ++o) {
        const VertexId b = mate_object_[o];
        if (b >= 0 && mate_bidder_[static_cast<std::size_t>(b)] != static_cast<VertexId>(o)) return false;
    }
    return count == matched_;
}

DistanceBounds max_distance_3approx(const MatchingInstance& instance)
{
    const auto farthest = [](Point2 from, std::span<const Vertex> among) {
        std::size_t best = 0;
        double best_d = -1.0;
        for (std::size_t k = 0; k < among.size(); ++k) {
            const double d = linf_distance(from, among[k].pos);
            if (d > best_d) {
                best_d = d;
                best = k;
            }
        }
        return among[best].pos;
    };
    const Point2 v0 = farthest(instance.bidder(0).pos, instance.objects());
    const Point2 u0 = farthest(v0, instance.bidders());
    const double lower = linf_distance(u0, v0);
    return {lower, 3.0 * lower};
}

BottleneckInterval approx_bottleneck(HopcroftKarp& matcher, double delta, int max_iterations)
{
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
    // Identical diagrams: the termination test below is meaningless for lower = 0.
    if (matcher.feasible(0.0)) return {0.0, 0.0};

    double lower = 0.0;
    double upper = max_distance_3approx(matcher.instance()).upper;
    while (!matcher.feasible(upper)) {
        // Only reachable through rounding in the 3-approximation.
        lower = upper;
        upper = upper > 0.0 ? 2.0 * upper : 1.0;
    }
    for (int it = 0; it < max_iterations; ++it) {
        if (upper - lower < delta * lower) break;
        if (upper - lower < 1e-14 * upper) break;
        const double mid = lower + (upper - lower) / 2.0;
        if (matcher.feasible(mid)) upper = mid;
        else lower = mid;
    }
    return {lower, upper};
}

BottleneckInterval approx_bottleneck(const PersistenceDiagram& x, const PersistenceDiagram& y, double delta,
                                     const BottleneckOptions& options)
{
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
    if (x.empty() && y.empty()) return {0.0, 0.0};
    const MatchingInstance instance(x, y, Exponent::bottleneck());
    HopcroftKarp matcher(instance, options.engine);
    return approx_bottleneck(matcher, delta, options.max_iterations);
}

double exact_bottleneck(const PersistenceDiagram& x, const PersistenceDiagram& y, double delta,
                        const BottleneckOptions& options)
{
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
    if (x.empty() && y.empty()) return 0.0;
    const MatchingInstance instance(x, y, Exponent::bottleneck());
    HopcroftKarp matcher(instance, options.engine);
    const auto [a, b] = approx_bottleneck(matcher, delta, options.max_iterations);
    if (b == 0.0) return 0.0;

    const std::vector<double> candidates = candidate_distances(instance, a, b);
    if (candidates.empty()) throw std::logic_error("no edge weight inside the approximation interval");
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (matcher.feasible(candidates[mid])) hi = mid;
        else lo = mid + 1;
    }
    return candidates[lo];
}

}  // namespace pdm
