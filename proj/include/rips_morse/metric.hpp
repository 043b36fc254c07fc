#ifndef RIPS_MORSE_METRIC_HPP
#define RIPS_MORSE_METRIC_HPP

/**
 * Finite integer metric spaces: the l1 lattice Z^n and explicit distance
 * matrices, plus the vertex sets (finite nonempty subsets) that serve as
 * vertices of the subdivided Rips complex.
 */

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "rational.hpp"

namespace rips_morse {

using Coord = std::int64_t;
using Distance = std::int64_t;

/// Reports keep insertion order so serialized output is stable.
using Json = nlohmann::ordered_json;

class LatticePoint {
public:
    LatticePoint() = default;

    explicit LatticePoint(std::vector<Coord> coords) : coords_(std::move(coords))
    {
        if (coords_.empty())
            throw InputError("lattice point must have dimension >= 1");
    }

    LatticePoint(std::initializer_list<Coord> coords) : LatticePoint(std::vector<Coord>(coords)) {}

    std::size_t dimension() const { return coords_.size(); }
    Coord operator[](std::size_t i) const { return coords_[i]; }
    std::span<const Coord> coords() const { return coords_; }

    auto operator<=>(const LatticePoint&) const = default;
    bool operator==(const LatticePoint&) const = default;

private:
    std::vector<Coord> coords_;
};

inline std::string to_string(const LatticePoint& p)
{
    std::string out = "(";
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(p[i]);
    }
    return out + ")";
}

inline void require_same_dimension(const LatticePoint& p, const LatticePoint& q)
{
    if (p.dimension() != q.dimension())
        throw InputError("dimension mismatch: " + to_string(p) + " vs " + to_string(q));
}

inline Distance l1_distance(const LatticePoint& p, const LatticePoint& q)
{
    require_same_dimension(p, q);
    Distance d = 0;
    for (std::size_t i = 0; i < p.dimension(); ++i)
        d += p[i] > q[i] ? p[i] - q[i] : q[i] - p[i];
    return d;
}

/// Rational-centered l1 distance; used for centers of mass and LP centers.
inline Rational l1_distance(std::span<const Rational> x, const LatticePoint& q)
{
    if (x.size() != q.dimension())
        throw InputError("dimension mismatch between rational point and " + to_string(q));
    Rational d = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d += abs(x[i] - Rational(q[i]));
    return d;
}

/// Axis-aligned box of lattice points, lo <= hi coordinatewise.
class Window {
public:
    Window(LatticePoint lo, LatticePoint hi) : lo_(std::move(lo)), hi_(std::move(hi))
    {
        require_same_dimension(lo_, hi_);
        for (std::size_t i = 0; i < lo_.dimension(); ++i)
            if (lo_[i] > hi_[i])
                throw InputError("window corner " + to_string(lo_) + " exceeds " + to_string(hi_));
    }

    /// Smallest window containing the points, inflated by `margin` in every coordinate.
    static Window bounding_box(std::span<const LatticePoint> points, Coord margin = 0)
    {
        if (points.empty())
            throw InputError("bounding box of an empty point set");
        std::vector<Coord> lo(points.front().coords().begin(), points.front().coords().end());
        std::vector<Coord> hi = lo;
        for (const auto& p : points) {
            require_same_dimension(p, points.front());
            for (std::size_t i = 0; i < p.dimension(); ++i) {
                lo[i] = std::min(lo[i], p[i]);
                hi[i] = std::max(hi[i], p[i]);
            }
        }
        for (auto& c : lo)
            c -= margin;
        for (auto& c : hi)
            c += margin;
        return Window(LatticePoint(std::move(lo)), LatticePoint(std::move(hi)));
    }

    /// Parses "x0,y0:x1,y1".
    static Window parse(const std::string& text)
    {
        const auto colon = text.find(':');
        if (colon == std::string::npos)
            throw InputError("window must look like 'x0,y0:x1,y1', got '" + text + "'");
        auto parse_point = [&](const std::string& part) {
            std::vector<Coord> coords;
            std::stringstream ss(part);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    std::size_t used = 0;
                    coords.push_back(std::stoll(item, &used));
                    if (used != item.size())
                        throw InputError("trailing characters");
                } catch (const std::exception&) {
                    throw InputError("bad window coordinate '" + item + "' in '" + text + "'");
                }
            }
            return LatticePoint(std::move(coords));
        };
        return Window(parse_point(text.substr(0, colon)), parse_point(text.substr(colon + 1)));
    }

    std::size_t dimension() const { return lo_.dimension(); }
    const LatticePoint& lo() const { return lo_; }
    const LatticePoint& hi() const { return hi_; }

    bool contains(const LatticePoint& p) const
    {
        require_same_dimension(p, lo_);
        for (std::size_t i = 0; i < p.dimension(); ++i)
            if (p[i] < lo_[i] || p[i] > hi_[i])
                return false;
        return true;
    }

    bool contains(const Window& other) const { return contains(other.lo_) && contains(other.hi_); }

    /// Number of lattice points; throws BoundExceededError on overflow.
    std::uint64_t point_count() const
    {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dimension(); ++i) {
            const auto side = static_cast<std::uint64_t>(hi_[i] - lo_[i]) + 1;
            if (count > std::numeric_limits<std::uint64_t>::max() / side)
                throw BoundExceededError("window point count overflows");
            count *= side;
        }
        return count;
    }

    /// All lattice points in lexicographic order.
    std::vector<LatticePoint> points() const
    {
        std::vector<LatticePoint> out;
        out.reserve(point_count());
        std::vector<Coord> cur(lo_.coords().begin(), lo_.coords().end());
        while (true) {
            out.emplace_back(cur);
            std::size_t i = dimension();
            while (i > 0) {
                --i;
                if (cur[i] < hi_[i]) {
                    ++cur[i];
                    break;
                }
                cur[i] = lo_[i];
                if (i == 0)
                    return out;
            }
        }
    }

    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < dimension(); ++i)
            out += (i ? "," : "") + std::to_string(lo_[i]);
        out += ':';
        for (std::size_t i = 0; i < dimension(); ++i)
            out += (i ? "," : "") + std::to_string(hi_[i]);
        return out;
    }

private:
    LatticePoint lo_;
    LatticePoint hi_;
};

/// Lattice points q of the window with l1_distance(center, q) <= radius.
inline std::vector<LatticePoint> ball_points(const LatticePoint& center, const Rational& radius,
                                             const Window& window)
{
    require_same_dimension(center, window.lo());
    std::vector<LatticePoint> out;
    for (auto& q : window.points())
        if (Rational(l1_distance(center, q)) <= radius)
            out.push_back(std::move(q));
    return out;
}

template <class S>
concept MetricSpace = requires(const S& space, const typename S::point_type& p, Distance t) {
    { space.distance(p, p) } -> std::convertible_to<Distance>;
    { space.n_bound(t) } -> std::convertible_to<std::uint64_t>;
    { space.label(p) } -> std::convertible_to<std::string>;
};

/// Z^n with the word metric of the standard generators (= l1).
class LatticeSpace {
public:
    using point_type = LatticePoint;

    explicit LatticeSpace(std::size_t dimension) : dimension_(dimension)
    {
        if (dimension == 0)
            throw InputError("lattice dimension must be >= 1");
    }

    std::size_t dimension() const { return dimension_; }

    Distance distance(const LatticePoint& p, const LatticePoint& q) const
    {
        if (p.dimension() != dimension_)
            throw InputError("point " + to_string(p) + " is not in Z^" + std::to_string(dimension_));
        return l1_distance(p, q);
    }

    /// (t+1)^n: a diameter-t set has coordinate spread <= t on every axis.
    std::uint64_t n_bound(Distance t) const
    {
        if (t < 0)
            throw InputError("n_bound needs t >= 0");
        const auto side = static_cast<std::uint64_t>(t) + 1;
        std::uint64_t bound = 1;
        for (std::size_t i = 0; i < dimension_; ++i) {
            if (bound > std::numeric_limits<std::uint64_t>::max() / side)
                throw BoundExceededError("n_bound (" + std::to_string(t) + "+1)^" + std::to_string(dimension_) +
                                         " exceeds 64-bit range");
            bound *= side;
        }
        return bound;
    }

    std::string label(const LatticePoint& p) const { return to_string(p); }

private:
    std::size_t dimension_;
};

/// Point identity in a distance-matrix space.
struct PointIndex {
    std::size_t value = 0;
    auto operator<=>(const PointIndex&) const = default;
};

class FiniteMetricSpace {
public:
    using point_type = PointIndex;

    /// Validates all metric axioms; errors name the axiom and the offending indices.
    explicit FiniteMetricSpace(std::vector<std::vector<Distance>> dist) : dist_(std::move(dist))
    {
        const std::size_t m = dist_.size();
        if (m == 0)
            throw InputError("metric space must have at least one point");
        for (std::size_t i = 0; i < m; ++i)
            if (dist_[i].size() != m)
                throw InputError("distance matrix row " + std::to_string(i) + " has " +
                                 std::to_string(dist_[i].size()) + " entries, expected " + std::to_string(m));
        auto at = [](std::size_t i, std::size_t j) {
            return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        };
        for (std::size_t i = 0; i < m; ++i) {
            if (dist_[i][i] != 0)
                throw InputError("identity axiom violated: d" + at(i, i) + " != 0");
            for (std::size_t j = 0; j < m; ++j) {
                if (dist_[i][j] < 0)
                    throw InputError("nonnegativity violated at " + at(i, j));
                if (dist_[i][j] != dist_[j][i])
                    throw InputError("symmetry axiom violated: d" + at(i, j) + " != d" + at(j, i));
                if (i != j && dist_[i][j] == 0)
                    throw InputError("separation axiom violated: d" + at(i, j) + " = 0");
            }
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < m; ++k)
                    if (dist_[i][k] > dist_[i][j] + dist_[j][k])
                        throw InputError("triangle inequality violated: d(" + std::to_string(i) + "," +
                                         std::to_string(k) + ") > d(" + std::to_string(i) + "," +
                                         std::to_string(j) + ") + d(" + std::to_string(j) + "," +
                                         std::to_string(k) + ")");
    }

    /// Induced l1 metric on a finite list of lattice points (order preserved).
    static FiniteMetricSpace from_lattice_points(std::span<const LatticePoint> points)
    {
        std::vector<std::vector<Distance>> dist(points.size(), std::vector<Distance>(points.size()));
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = 0; j < points.size(); ++j)
                dist[i][j] = l1_distance(points[i], points[j]);
        return FiniteMetricSpace(std::move(dist));
    }

    /// Shortest-path metric of the m-cycle graph.
    static FiniteMetricSpace cycle_graph(std::size_t m)
    {
        std::vector<std::vector<Distance>> dist(m, std::vector<Distance>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const auto gap = static_cast<Distance>(i > j ? i - j : j - i);
                dist[i][j] = std::min<Distance>(gap, static_cast<Distance>(m) - gap);
            }
        return FiniteMetricSpace(std::move(dist));
    }

    std::size_t size() const { return dist_.size(); }

    Distance distance(PointIndex p, PointIndex q) const
    {
        if (p.value >= size() || q.value >= size())
            throw InputError("point index out of range");
        return dist_[p.value][q.value];
    }

    /// Whole-space cardinality bounds every subset.
    std::uint64_t n_bound(Distance t) const
    {
        if (t < 0)
            throw InputError("n_bound needs t >= 0");
        return size();
    }

    std::string label(PointIndex p) const { return std::to_string(p.value); }

    std::vector<PointIndex> points() const
    {
        std::vector<PointIndex> out(size());
        for (std::size_t i = 0; i < size(); ++i)
            out[i].value = i;
        return out;
    }

    Distance diameter() const
    {
        Distance d = 0;
        for (const auto& row : dist_)
            d = std::max(d, *std::max_element(row.begin(), row.end()));
        return d;
    }

    const std::vector<std::vector<Distance>>& matrix() const { return dist_; }

private:
    std::vector<std::vector<Distance>> dist_;
};

/// m rows x m columns of nonnegative integers, comma separated, no header.
inline FiniteMetricSpace parse_distance_csv(std::istream& in)
{
    std::vector<std::vector<Distance>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::vector<Distance> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto first = cell.find_first_not_of(" \t");
            const auto last = cell.find_last_not_of(" \t");
            const std::string trimmed = first == std::string::npos ? "" : cell.substr(first, last - first + 1);
            std::size_t used = 0;
            Distance value = 0;
            try {
                value = std::stoll(trimmed, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (trimmed.empty() || used != trimmed.size())
                throw InputError("line " + std::to_string(line_no) + ": '" + trimmed + "' is not an integer");
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    return FiniteMetricSpace(std::move(rows));
}

/// JSON array of integer arrays, e.g. [[0,0],[1,2]].
inline std::vector<LatticePoint> parse_point_set_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("point set is not valid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw InputError("point set must be a nonempty JSON array of integer arrays");
    std::vector<LatticePoint> out;
    for (const auto& item : doc) {
        if (!item.is_array() || item.empty())
            throw InputError("each point must be a nonempty array of integers");
        std::vector<Coord> coords;
        for (const auto& c : item) {
            if (!c.is_number_integer())
                throw InputError("non-integer coordinate " + c.dump());
            coords.push_back(c.get<Coord>());
        }
        out.emplace_back(std::move(coords));
        require_same_dimension(out.back(), out.front());
    }
    return out;
}

/// Finite nonempty subset of a space with its diameter cached. Points are
/// kept sorted and duplicate-free.
template <class Point>
class VertexSet {
public:
    using point_type = Point;

    template <MetricSpace Space>
    VertexSet(const Space& space, std::vector<Point> points) : points_(std::move(points))
    {
        if (points_.empty())
            throw InputError("vertex set must be nonempty");
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                diameter_ = std::max(diameter_, static_cast<Distance>(space.distance(points_[i], points_[j])));
        if (points_.size() == 1)
            (void)space.distance(points_[0], points_[0]);
    }

    std::span<const Point> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    Distance diameter() const { return diameter_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    bool contains(const Point& p) const { return std::binary_search(points_.begin(), points_.end(), p); }

    auto operator<=>(const VertexSet& other) const { return points_ <=> other.points_; }
    bool operator==(const VertexSet& other) const { return points_ == other.points_; }

private:
    std::vector<Point> points_;
    Distance diameter_ = 0;
};

template <MetricSpace Space>
using VertexSetOf = VertexSet<typename Space::point_type>;

template <MetricSpace Space>
Distance diameter(std::span<const typename Space::point_type> points, const Space& space)
{
    if (points.empty())
        throw InputError("diameter of an empty set");
    Distance d = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            d = std::max(d, static_cast<Distance>(space.distance(points[i], points[j])));
    return d;
}

template <MetricSpace Space>
std::string set_label(const VertexSetOf<Space>& s, const Space& space)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ',';
        out += space.label(s[i]);
    }
    return out + "}";
}

/// Largest distance from p to a point of S.
template <MetricSpace Space>
Distance eccentricity(const typename Space::point_type& p, const VertexSetOf<Space>& s, const Space& space)
{
    Distance d = 0;
    for (const auto& q : s.points())
        d = std::max(d, static_cast<Distance>(space.distance(p, q)));
    return d;
}

inline Json to_json(const LatticePoint& p)
{
    return Json(std::vector<Coord>(p.coords().begin(), p.coords().end()));
}

inline Json to_json(const VertexSet<LatticePoint>& s)
{
    auto out = Json::array();
    for (const auto& p : s.points())
        out.push_back(to_json(p));
    return out;
}

inline Json to_json(const VertexSet<PointIndex>& s)
{
    auto out = Json::array();
    for (const auto& p : s.points())
        out.push_back(p.value);
    return out;
}

} // namespace rips_morse

#endif // RIPS_MORSE_METRIC_HPP
