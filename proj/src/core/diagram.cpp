#include "pdmatch/diagram.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "pdmatch/errors.hpp"

namespace pdm {

namespace {

void check_point(const DiagramPoint& p)
{
    if (!std::isfinite(p.birth) || !std::isfinite(p.death))
        throw InvalidParameter("diagram point has a non-finite coordinate");
    if (p.death < p.birth) throw InvalidParameter("diagram point lies below the diagonal");
    if (p.mass < 1) throw InvalidParameter("diagram point mass must be positive");
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

double parse_real(std::string_view field, std::size_t line)
{
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size())
        throw ParseError(line, "invalid coordinate '" + std::string(field) + "'");
    if (!std::isfinite(value)) throw ParseError(line, "non-finite coordinate '" + std::string(field) + "'");
    return value;
}

std::int64_t parse_mass(std::string_view field, std::size_t line)
{
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size())
        throw ParseError(line, "mass must be a decimal integer, got '" + std::string(field) + "'");
    if (value <= 0) throw ParseError(line, "mass must be positive");
    return value;
}

}  // namespace

PersistenceDiagram::PersistenceDiagram(std::vector<DiagramPoint> points) : points_(std::move(points))
{
    for (const auto& p : points_) {
        check_point(p);
        total_mass_ += p.mass;
        if (total_mass_ > kMaxTotalMass) throw InvalidParameter("total diagram mass exceeds 2^31");
    }
}

PersistenceDiagram PersistenceDiagram::expanded() const
{
    std::vector<DiagramPoint> out;
    out.reserve(static_cast<std::size_t>(total_mass_));
    for (const auto& p : points_)
        for (std::int64_t k = 0; k < p.mass; ++k) out.push_back({p.birth, p.death, 1});
    return PersistenceDiagram(std::move(out));
}

PersistenceDiagram parse_diagram(std::istream& in)
{
    std::vector<DiagramPoint> points;
    std::int64_t total = 0;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 2 && fields.size() != 3)
            throw ParseError(line_no, "expected 'birth death [mass]', got " + std::to_string(fields.size()) +
                                          " fields");
        DiagramPoint p;
        p.birth = parse_real(fields[0], line_no);
        p.death = parse_real(fields[1], line_no);
        if (fields.size() == 3) p.mass = parse_mass(fields[2], line_no);
        if (p.death < p.birth) throw ParseError(line_no, "death is smaller than birth");
        total += p.mass;
        if (total > kMaxTotalMass) throw ParseError(line_no, "total mass exceeds 2^31");
        points.push_back(p);
    }
    return PersistenceDiagram(std::move(points));
}

PersistenceDiagram parse_diagram(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_diagram(in);
}

PersistenceDiagram read_diagram_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return parse_diagram(in);
}

std::string format_double(double value)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
    return std::string(buf, end);
}

void write_diagram(std::ostream& out, const PersistenceDiagram& diagram)
{
    for (const auto& p : diagram.points()) {
        out << format_double(p.birth) << ' ' << format_double(p.death);
        if (p.mass != 1) out << ' ' << p.mass;
        out << '\n';
    }
}

PersistenceDiagram merge_duplicates(const PersistenceDiagram& diagram)
{
    std::vector<DiagramPoint> out;
    std::map<std::pair<double, double>, std::size_t> where;
    for (const auto& p : diagram.points()) {
        const auto [it, inserted] = where.try_emplace({p.birth, p.death}, out.size());
        if (inserted) out.push_back(p);
        else out[it->second].mass += p.mass;
    }
    return PersistenceDiagram(std::move(out));
}

std::pair<PersistenceDiagram, PersistenceDiagram> remove_common_points(const PersistenceDiagram& x,
                                                                       const PersistenceDiagram& y)
{
    using Key = std::pair<double, double>;
    std::map<Key, std::int64_t> mass_x;
    std::map<Key, std::int64_t> mass_y;
    for (const auto& p : x.points()) mass_x[{p.birth, p.death}] += p.mass;
    for (const auto& p : y.points()) mass_y[{p.birth, p.death}] += p.mass;

    // Common mass per location; consumed front to back while walking each input.
    std::map<Key, std::int64_t> common_x;
    for (const auto& [key, m] : mass_x) {
        if (const auto it = mass_y.find(key); it != mass_y.end()) common_x[key] = std::min(m, it->second);
    }
    auto common_y = common_x;

    const auto strip = [](const PersistenceDiagram& d, std::map<Key, std::int64_t>& common) {
        std::vector<DiagramPoint> out;
        for (auto p : d.points()) {
            const auto it = common.find({p.birth, p.death});
            if (it != common.end() && it->second > 0) {
                const std::int64_t take = std::min(it->second, p.mass);
                it->second -= take;
                p.mass -= take;
            }
            if (p.mass > 0) out.push_back(p);
        }
        return PersistenceDiagram(std::move(out));
    };
    return {strip(x, common_x), strip(y, common_y)};
}

}  // namespace pdm
