#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pdmatch/diagram.hpp"
#include "pdmatch/geometry.hpp"

namespace pdm {

/// Cost exponent: a finite real q >= 1, or the bottleneck (q = infinity) kind.
class Exponent {
public:
    /// Throws InvalidParameter unless q is finite and q >= 1.
    explicit Exponent(double q);
    static Exponent bottleneck() noexcept { return Exponent(); }

    bool is_bottleneck() const noexcept { return bottleneck_; }
    /// The finite exponent. ContractViolation for the bottleneck kind.
    double value() const;

    /// Raises an L-infinity distance to this exponent (identity for bottleneck).
    double apply(double distance) const noexcept { return bottleneck_ ? distance : pow_q(distance, q_); }

private:
    Exponent() noexcept : q_(0.0), bottleneck_(true) {}
    double q_;
    bool bottleneck_;
};

enum class VertexKind : std::uint8_t { OffDiagonal, DiagonalProjection };

using VertexId = std::int32_t;

struct Vertex {
    Point2 pos;
    VertexKind kind = VertexKind::OffDiagonal;
    /// Index (on the other side) of this vertex's projection, or of the
    /// off-diagonal point this vertex is the projection of.
    VertexId partner = -1;

    bool is_diagonal() const noexcept { return kind == VertexKind::DiagonalProjection; }
};

/// c(u,v)^q for two vertices on opposite sides. c is the L-infinity distance
/// when either side is off-diagonal and 0 between two projections. Throws
/// ContractViolation when (u,v) is a skew pair, i.e. an off-diagonal point
/// together with a projection that is not its own.
double cost(const Vertex& u, const Vertex& v, double q);

/// The bipartite graph between U = X0 + Y0' (bidders) and V = Y0 + X0'
/// (objects), with masses expanded to unit copies. Layout:
///   bidders [0, nX)  off-diagonal points of X,  bidders [nX, n) projections of Y
///   objects [0, nY)  off-diagonal points of Y,  objects [nY, n) projections of X
/// Skew pairs are not edges of this graph.
class MatchingInstance {
public:
    /// Throws EmptyInstance when both diagrams are empty.
    MatchingInstance(const PersistenceDiagram& x, const PersistenceDiagram& y, Exponent exponent);

    std::size_t size() const noexcept { return bidders_.size(); }
    std::size_t offdiag_bidder_count() const noexcept { return n_x_; }
    std::size_t offdiag_object_count() const noexcept { return n_y_; }
    Exponent exponent() const noexcept { return exponent_; }

    std::span<const Vertex> bidders() const noexcept { return bidders_; }
    std::span<const Vertex> objects() const noexcept { return objects_; }
    const Vertex& bidder(VertexId i) const { return bidders_[static_cast<std::size_t>(i)]; }
    const Vertex& object(VertexId j) const { return objects_[static_cast<std::size_t>(j)]; }

    bool admissible(VertexId bidder, VertexId object) const noexcept
    {
        const Vertex& b = bidders_[static_cast<std::size_t>(bidder)];
        const Vertex& o = objects_[static_cast<std::size_t>(object)];
        if (b.is_diagonal() == o.is_diagonal()) return true;
        return b.partner == object;
    }

    /// c(bidder, object); ContractViolation on a skew pair.
    double distance(VertexId bidder, VertexId object) const;
    /// c(bidder, object) raised to the instance exponent.
    double weight(VertexId bidder, VertexId object) const;

    /// As distance(), without the skew check. Callers guarantee admissibility;
    /// when skew auditing is enabled the check runs anyway.
    double distance_unchecked(VertexId bidder, VertexId object) const
    {
        if (skew_audit_enabled()) return distance(bidder, object);
        const Vertex& b = bidders_[static_cast<std::size_t>(bidder)];
        const Vertex& o = objects_[static_cast<std::size_t>(object)];
        if (b.is_diagonal() && o.is_diagonal()) return 0.0;
        return linf_distance(b.pos, o.pos);
    }

    static void set_skew_audit(bool enabled) noexcept;
    static bool skew_audit_enabled() noexcept;

private:
    std::vector<Vertex> bidders_;
    std::vector<Vertex> objects_;
    std::size_t n_x_ = 0;
    std::size_t n_y_ = 0;
    Exponent exponent_;
};

/// One side of the multi-point instance: a location and a mass.
struct MultiPoint {
    Point2 pos;
    std::int64_t mass = 1;
};

/// Instance for the auction with integer masses. Off-diagonal multi-bidders
/// x_1..x_k are followed by one aggregated diagonal multi-bidder of mass m_Y;
/// off-diagonal multi-objects y_1..y_l are followed by one aggregated
/// diagonal multi-object of mass m_X. An aggregated entity of mass 0 is
/// omitted. Benefits use the relaxed cost in which every projection of X is
/// interchangeable (and likewise for Y):
///   (x_i, y_j)      -> |x_i - y_j|^q
///   (x_i, diagonal) -> |x_i - x_i'|^q
///   (diagonal, y_j) -> |y_j - y_j'|^q
///   (diagonal, diagonal) -> 0
class MassInstance {
public:
    MassInstance(const PersistenceDiagram& x, const PersistenceDiagram& y, Exponent exponent);

    std::size_t bidder_count() const noexcept { return bidders_.size() + (has_diagonal_bidder() ? 1 : 0); }
    std::size_t object_count() const noexcept { return objects_.size() + (has_diagonal_object() ? 1 : 0); }
    std::size_t offdiag_bidder_count() const noexcept { return bidders_.size(); }
    std::size_t offdiag_object_count() const noexcept { return objects_.size(); }

    bool has_diagonal_bidder() const noexcept { return mass_y_ > 0; }
    bool has_diagonal_object() const noexcept { return mass_x_ > 0; }
    bool is_diagonal_bidder(std::size_t i) const noexcept { return i == bidders_.size(); }
    bool is_diagonal_object(std::size_t j) const noexcept { return j == objects_.size(); }

    std::int64_t bidder_mass(std::size_t i) const noexcept
    {
        return is_diagonal_bidder(i) ? mass_y_ : bidders_[i].mass;
    }
    std::int64_t object_mass(std::size_t j) const noexcept
    {
        return is_diagonal_object(j) ? mass_x_ : objects_[j].mass;
    }
    std::int64_t total_mass() const noexcept { return mass_x_ + mass_y_; }

    std::span<const MultiPoint> offdiag_bidders() const noexcept { return bidders_; }
    std::span<const MultiPoint> offdiag_objects() const noexcept { return objects_; }
    Exponent exponent() const noexcept { return exponent_; }

    /// Relaxed distance between multi-bidder i and multi-object j.
    double distance(std::size_t i, std::size_t j) const noexcept;
    /// distance(i, j) raised to the exponent.
    double cost(std::size_t i, std::size_t j) const noexcept { return exponent_.apply(distance(i, j)); }
    double benefit(std::size_t i, std::size_t j) const noexcept { return -cost(i, j); }

private:
    std::vector<MultiPoint> bidders_;
    std::vector<MultiPoint> objects_;
    std::int64_t mass_x_ = 0;
    std::int64_t mass_y_ = 0;
    Exponent exponent_;
};

}  // namespace pdm
