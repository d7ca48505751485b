#include "pdmatch/instance.hpp"

#include <atomic>
#include <cmath>

#include "pdmatch/errors.hpp"

namespace pdm {

namespace {
std::atomic<bool> g_skew_audit{false};
}

Exponent::Exponent(double q) : q_(q), bottleneck_(false)
{
    if (!std::isfinite(q) || q < 1.0) throw InvalidParameter("exponent q must be a finite real >= 1");
}

double Exponent::value() const
{
    if (bottleneck_) throw ContractViolation("bottleneck exponent has no finite value");
    return q_;
}

double cost(const Vertex& u, const Vertex& v, double q)
{
    if (u.is_diagonal() && v.is_diagonal()) return 0.0;
    if (u.is_diagonal() != v.is_diagonal()) {
        const Vertex& off = u.is_diagonal() ? v : u;
        const Vertex& diag = u.is_diagonal() ? u : v;
        if (diagonal_projection(off.pos) != diag.pos) throw ContractViolation("cost evaluated on a skew pair");
    }
    return pow_q(linf_distance(u.pos, v.pos), q);
}

MatchingInstance::MatchingInstance(const PersistenceDiagram& x, const PersistenceDiagram& y, Exponent exponent)
    : exponent_(exponent)
{
    if (x.empty() && y.empty()) throw EmptyInstance();
    n_x_ = static_cast<std::size_t>(x.total_mass());
    n_y_ = static_cast<std::size_t>(y.total_mass());
    const std::size_t n = n_x_ + n_y_;
    bidders_.reserve(n);
    objects_.reserve(n);

    for (const auto& p : x.points())
        for (std::int64_t k = 0; k < p.mass; ++k)
            bidders_.push_back({p.position(), VertexKind::OffDiagonal, static_cast<VertexId>(n_y_ + bidders_.size())});
    for (const auto& p : y.points())
        for (std::int64_t k = 0; k < p.mass; ++k)
            objects_.push_back({p.position(), VertexKind::OffDiagonal, static_cast<VertexId>(n_x_ + objects_.size())});
    for (std::size_t j = 0; j < n_y_; ++j)
        bidders_.push_back({diagonal_projection(objects_[j].pos), VertexKind::DiagonalProjection,
                            static_cast<VertexId>(j)});
    for (std::size_t i = 0; i < n_x_; ++i)
        objects_.push_back({diagonal_projection(bidders_[i].pos), VertexKind::DiagonalProjection,
                            static_cast<VertexId>(i)});
}

double MatchingInstance::distance(VertexId bidder, VertexId object) const
{
    if (!admissible(bidder, object)) throw ContractViolation("distance evaluated on a skew pair");
    const Vertex& b = bidders_[static_cast<std::size_t>(bidder)];
    const Vertex& o = objects_[static_cast<std::size_t>(object)];
    if (b.is_diagonal() && o.is_diagonal()) return 0.0;
    return linf_distance(b.pos, o.pos);
}

double MatchingInstance::weight(VertexId bidder, VertexId object) const
{
    return exponent_.apply(distance(bidder, object));
}

void MatchingInstance::set_skew_audit(bool enabled) noexcept { g_skew_audit.store(enabled); }
bool MatchingInstance::skew_audit_enabled() noexcept { return g_skew_audit.load(std::memory_order_relaxed); }

MassInstance::MassInstance(const PersistenceDiagram& x, const PersistenceDiagram& y, Exponent exponent)
    : exponent_(exponent)
{
    if (x.empty() && y.empty()) throw EmptyInstance();
    for (const auto& p : x.points()) bidders_.push_back({p.position(), p.mass});
    for (const auto& p : y.points()) objects_.push_back({p.position(), p.mass});
    mass_x_ = x.total_mass();
    mass_y_ = y.total_mass();
}

double MassInstance::distance(std::size_t i, std::size_t j) const noexcept
{
    const bool diag_b = is_diagonal_bidder(i);
    const bool diag_o = is_diagonal_object(j);
    if (diag_b && diag_o) return 0.0;
    if (diag_b) return linf_distance(diagonal_projection(objects_[j].pos), objects_[j].pos);
    if (diag_o) return linf_distance(bidders_[i].pos, diagonal_projection(bidders_[i].pos));
    return linf_distance(bidders_[i].pos, objects_[j].pos);
}

}  // namespace pdm
