#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

#include "pdmatch/geometry.hpp"

namespace pdm {

/// One off-diagonal (or zero-persistence) point with integer multiplicity.
struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;
    std::int64_t mass = 1;

    Point2 position() const noexcept { return {birth, death}; }

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Total mass of a diagram may not exceed this.
inline constexpr std::int64_t kMaxTotalMass = std::int64_t{1} << 31;

/// A finite multiset of diagram points, kept in input order. Points are
/// validated on construction: finite coordinates, birth <= death, mass >= 1.
/// Duplicate coordinates are kept as separate entries; see merge_duplicates().
class PersistenceDiagram {
public:
    PersistenceDiagram() = default;
    explicit PersistenceDiagram(std::vector<DiagramPoint> points);

    const std::vector<DiagramPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    std::int64_t total_mass() const noexcept { return total_mass_; }

    /// Every point repeated `mass` times with mass 1; copies are contiguous
    /// and keep input order.
    PersistenceDiagram expanded() const;

    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

private:
    std::vector<DiagramPoint> points_;
    std::int64_t total_mass_ = 0;
};

PersistenceDiagram parse_diagram(std::istream& in);
PersistenceDiagram parse_diagram(std::string_view text);
PersistenceDiagram read_diagram_file(const std::filesystem::path& path);

/// Writes `birth death` (mass 1) or `birth death mass` lines, using the
/// shortest decimal form that parses back to the same double.
void write_diagram(std::ostream& out, const PersistenceDiagram& diagram);

/// Shortest round-trip decimal representation of `value`.
std::string format_double(double value);

/// Collapses points with identical coordinates into one point carrying the
/// summed mass, in order of first appearance.
PersistenceDiagram merge_duplicates(const PersistenceDiagram& diagram);

/// Subtracts the common multiset of points from both diagrams, mass-wise.
/// Preserves the 1-Wasserstein distance; not valid for other exponents.
std::pair<PersistenceDiagram, PersistenceDiagram> remove_common_points(const PersistenceDiagram& x,
                                                                       const PersistenceDiagram& y);

}  // namespace pdm
