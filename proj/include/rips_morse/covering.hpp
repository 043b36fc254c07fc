#ifndef RIPS_MORSE_COVERING_HPP
#define RIPS_MORSE_COVERING_HPP

/**
 * l1 ball-covering geometry of diameter-t subsets of Z^n.
 *
 * For t >= n^2 + n every diameter-t set S lies in an l1 ball of radius
 * r_t = tn/(n+1) + n/2 centered at a lattice point y0, and y0 lies within
 * t of every other lattice center of such a ball. The functions here build
 * y0 (center of mass for small S, rounded l1 Chebyshev center otherwise),
 * enumerate all valid centers, and check every inequality of that argument
 * exactly.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lp.hpp"
#include "metric.hpp"
#include "rational.hpp"

namespace rips_morse {

using LatticeSet = VertexSet<LatticePoint>;

/// Smallest scale at which the covering radius is defined in Z^n.
inline Distance covering_threshold(std::size_t n)
{
    const auto nn = static_cast<Distance>(n);
    return nn * nn + nn;
}

/// tn/(n+1): radius of the real ball that a Helly argument yields.
inline Rational helly_radius(std::size_t n, Distance t)
{
    const auto nn = static_cast<std::int64_t>(n);
    return make_rational(t * nn, nn + 1);
}

/// r_t = tn/(n+1) + n/2, defined for t >= n^2 + n.
inline Rational r_t(std::size_t n, Distance t)
{
    if (n == 0)
        throw InputError("dimension must be >= 1");
    if (t < covering_threshold(n))
        throw DomainError("r_t is only defined for t >= n^2+n = " + std::to_string(covering_threshold(n)) +
                          " (got t = " + std::to_string(t) + ")");
    const Rational half_n = make_rational(static_cast<std::int64_t>(n), 2);
    Rational r = helly_radius(n, t) + half_n;
    if (r > Rational(t) - half_n)
        throw InconsistencyError("r_t = " + to_string(r) + " exceeds t - n/2");
    return r;
}

inline std::vector<Rational> center_of_mass(const LatticeSet& s)
{
    const std::size_t n = s[0].dimension();
    std::vector<Rational> x(n, Rational(0));
    for (const auto& p : s.points())
        for (std::size_t i = 0; i < n; ++i)
            x[i] += p[i];
    for (auto& c : x)
        c /= static_cast<long>(s.size());
    return x;
}

/// Coordinatewise nearest integer, halves toward -inf; within n/2 in l1.
inline LatticePoint round_to_lattice(const std::vector<Rational>& x)
{
    std::vector<Coord> coords(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        coords[i] = to_int64(round_half_down(x[i]));
    return LatticePoint(std::move(coords));
}

namespace detail {

inline Distance max_distance(const LatticePoint& y, const LatticeSet& s)
{
    Distance d = 0;
    for (const auto& p : s.points())
        d = std::max(d, l1_distance(y, p));
    return d;
}

} // namespace detail

/**
 * Rounded center of mass y0. Checks d(y0, x0) <= n/2 always, and, when
 * |S| <= n+1 and diam(S) >= n^2+n, that S lies in the r_t-ball around y0.
 */
inline LatticePoint center_of_mass_center(const LatticeSet& s)
{
    const std::size_t n = s[0].dimension();
    const auto x0 = center_of_mass(s);
    LatticePoint y0 = round_to_lattice(x0);
    const std::vector<Rational> y_as_rational(y0.coords().begin(), y0.coords().end());
    if (l1_distance(x0, y0) > make_rational(static_cast<std::int64_t>(n), 2))
        throw InconsistencyError("rounded center of mass is farther than n/2 from the center of mass");
    if (s.size() <= n + 1 && s.diameter() >= covering_threshold(n)) {
        if (Rational(detail::max_distance(y0, s)) > r_t(n, s.diameter()))
            throw InconsistencyError("center of mass rounding misses r_t for " + to_string(y0));
    }
    return y0;
}

struct ChebyshevCenter {
    std::vector<Rational> center;
    Rational radius;
};

/**
 * The l1 linear program for the Chebyshev center of S:
 * minimize rho s.t. sum_i u_i^(s) <= rho, u_i^(s) >= +-(x_i - s_i).
 * Variable order: x_1..x_n (free), rho, then u^(s)_i per point.
 */
inline LinearProgram chebyshev_program(const LatticeSet& s)
{
    const std::size_t n = s[0].dimension();
    const std::size_t m = s.size();
    const std::size_t nvars = n + 1 + n * m;
    LinearProgram lp;
    lp.objective.assign(nvars, Rational(0));
    lp.objective[n] = 1;
    lp.bounds.assign(nvars, VariableBound{});
    for (std::size_t i = 0; i < n; ++i)
        lp.bounds[i].lower.reset();
    for (std::size_t k = 0; k < m; ++k) {
        LinearConstraint sum;
        sum.coefficients.assign(nvars, Rational(0));
        sum.coefficients[n] = -1;
        for (std::size_t i = 0; i < n; ++i)
            sum.coefficients[n + 1 + k * n + i] = 1;
        sum.relation = Relation::LessEqual;
        sum.rhs = 0;
        lp.constraints.push_back(std::move(sum));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t u = n + 1 + k * n + i;
            LinearConstraint above; // u - x_i >= -s_i
            above.coefficients.assign(nvars, Rational(0));
            above.coefficients[u] = 1;
            above.coefficients[i] = -1;
            above.relation = Relation::GreaterEqual;
            above.rhs = -s[k][i];
            LinearConstraint below; // u + x_i >= s_i
            below.coefficients.assign(nvars, Rational(0));
            below.coefficients[u] = 1;
            below.coefficients[i] = 1;
            below.relation = Relation::GreaterEqual;
            below.rhs = s[k][i];
            lp.constraints.push_back(std::move(above));
            lp.constraints.push_back(std::move(below));
        }
    }
    return lp;
}

/// Exact l1 Chebyshev center; asserts rho* <= tn/(n+1) when t >= n^2+n.
inline ChebyshevCenter chebyshev_center_l1(const LatticeSet& s)
{
    const std::size_t n = s[0].dimension();
    const auto sol = lp_solve(chebyshev_program(s));
    if (sol.status != LpStatus::Optimal)
        throw InconsistencyError("Chebyshev center program is " + to_string(sol.status));
    ChebyshevCenter out{std::vector<Rational>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n)),
                        sol.value};
    Rational achieved = 0;
    for (const auto& p : s.points())
        achieved = std::max(achieved, l1_distance(out.center, p));
    if (achieved != out.radius)
        throw InconsistencyError("Chebyshev center does not attain the optimal radius");
    if (s.diameter() >= covering_threshold(n) && out.radius > helly_radius(n, s.diameter()))
        throw InconsistencyError("Chebyshev radius " + to_string(out.radius) + " exceeds tn/(n+1)");
    return out;
}

struct EnclosingBall {
    LatticePoint center;
    Rational radius;
};

/**
 * Minimum over lattice centers in bbox(S) inflated by diam(S) of the
 * largest distance to S. Ties go to the lexicographically least center.
 */
inline EnclosingBall min_enclosing_lattice_ball(const LatticeSet& s)
{
    const Window box = Window::bounding_box(s.points(), s.diameter());
    std::optional<LatticePoint> best;
    Distance best_radius = 0;
    for (auto& y : box.points()) {
        Distance r = 0;
        bool pruned = false;
        for (const auto& p : s.points()) {
            r = std::max(r, l1_distance(y, p));
            if (best && r >= best_radius) {
                pruned = true;
                break;
            }
        }
        if (!pruned) {
            best = std::move(y);
            best_radius = r;
        }
    }
    return {*best, Rational(best_radius)};
}

/// Window that provably contains every lattice center within `radius` of S.
inline Window center_search_window(const LatticeSet& s, const Rational& radius)
{
    return Window::bounding_box(s.points(), to_int64(ceil(radius)));
}

/// Y = window points y with max_s d(y, s) <= radius, in lexicographic order.
inline std::vector<LatticePoint> enclosing_center_set(const LatticeSet& s, const Rational& radius,
                                                      const Window& window)
{
    const Window needed = center_search_window(s, radius);
    if (!window.contains(needed))
        throw WindowTooSmallError("center window " + window.str() + " does not contain " + needed.str());
    std::vector<LatticePoint> out;
    for (auto& y : window.points()) {
        bool inside = true;
        for (const auto& p : s.points())
            if (Rational(l1_distance(y, p)) > radius) {
                inside = false;
                break;
            }
        if (inside)
            out.push_back(std::move(y));
    }
    return out;
}

/// Uses r_t for t = diam(S); throws DomainError below n^2+n.
inline std::vector<LatticePoint> enclosing_center_set(const LatticeSet& s, const LatticeSpace& space,
                                                      std::optional<Window> window = std::nullopt)
{
    const Rational radius = r_t(space.dimension(), s.diameter());
    return enclosing_center_set(s, radius, window ? *window : center_search_window(s, radius));
}

struct CoveringViolation {
    std::string kind;
    Json witness;
};

struct CoveringReport {
    LatticeSet subject;
    Distance t = 0;
    Rational radius;
    LatticePoint y0;
    std::string y0_source;
    std::vector<LatticePoint> centers;
    bool centers_nonempty = false;
    bool y0_encloses = false;
    bool proximity_ok = false;
    std::vector<CoveringViolation> violations;

    bool ok() const { return violations.empty(); }
};

/**
 * Checks, for S with diam(S) = t >= n^2+n: (a) the set Y of lattice centers
 * of r_t-balls containing S is nonempty, (b) the constructed y0 is in Y,
 * (c) d(y0, y) <= t for all y in Y. Failures are returned as violations.
 */
inline CoveringReport verify_covering_hypothesis(const LatticeSet& s, const LatticeSpace& space)
{
    const std::size_t n = space.dimension();
    if (s[0].dimension() != n)
        throw InputError("set dimension does not match the lattice");
    const Distance t = s.diameter();
    CoveringReport report{s, t, r_t(n, t), LatticePoint{}, {}, {}, false, false, false, {}};
    const Rational half_n = make_rational(static_cast<std::int64_t>(n), 2);
    if (report.radius + half_n > Rational(t))
        report.violations.push_back({"gap", Json{{"r_t_plus_half_n", to_string(report.radius + half_n)}}});

    std::vector<Rational> real_center;
    if (s.size() <= n + 1) {
        real_center = center_of_mass(s);
        report.y0_source = "center-of-mass";
    } else {
        const auto sol = lp_solve(chebyshev_program(s));
        if (sol.status != LpStatus::Optimal)
            throw InconsistencyError("Chebyshev center program is " + to_string(sol.status));
        real_center.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
        report.y0_source = "chebyshev-lp";
        if (sol.value > helly_radius(n, t))
            report.violations.push_back({"helly-radius", Json{{"rho", to_string(sol.value)}}});
    }
    report.y0 = round_to_lattice(real_center);

    report.centers = enclosing_center_set(s, report.radius, center_search_window(s, report.radius));
    report.centers_nonempty = !report.centers.empty();
    if (!report.centers_nonempty)
        report.violations.push_back({"empty-center-set", Json::object()});

    report.y0_encloses = true;
    for (const auto& p : s.points())
        if (Rational(l1_distance(report.y0, p)) > report.radius) {
            report.y0_encloses = false;
            report.violations.push_back(
                {"y0-not-enclosing", Json{{"point", to_json(p)}, {"distance", l1_distance(report.y0, p)}}});
            break;
        }

    report.proximity_ok = report.y0_encloses;
    for (const auto& y : report.centers)
        if (l1_distance(report.y0, y) > t) {
            report.proximity_ok = false;
            report.violations.push_back(
                {"proximity", Json{{"center", to_json(y)}, {"distance", l1_distance(report.y0, y)}}});
            break;
        }
    return report;
}

inline Json to_json(const CoveringReport& r)
{
    Json out;
    out["S"] = to_json(r.subject);
    out["t"] = r.t;
    out["r_t"] = to_string(r.radius);
    out["y0"] = to_json(r.y0);
    out["Y_size"] = r.centers.size();
    out["proximity_ok"] = r.proximity_ok;
    auto violations = Json::array();
    for (const auto& v : r.violations)
        violations.push_back(Json{{"kind", v.kind}, {"witness", v.witness}});
    out["violations"] = std::move(violations);
    return out;
}

struct HellyReport {
    Rational bound;                // tn/(n+1)
    Rational full_radius;          // rho*(S)
    Rational worst_subset_radius;  // max rho*(T) over (n+1)-subsets
    std::size_t subsets_checked = 0;
    bool hypothesis_ok = true;
    bool conclusion_ok = true;
    std::vector<LatticePoint> failing_subset;

    bool ok() const { return hypothesis_ok && conclusion_ok; }
};

/**
 * Every (n+1)-subset T has rho*(T) <= tn/(n+1) (the Helly hypothesis), and
 * rho*(S) <= tn/(n+1) (its conclusion), all via the exact LP.
 */
inline HellyReport helly_crosscheck(const LatticeSet& s)
{
    const std::size_t n = s[0].dimension();
    const Distance t = s.diameter();
    if (s.size() <= n + 1)
        throw DomainError("Helly cross-check needs |S| > n+1");
    if (t < covering_threshold(n))
        throw DomainError("Helly cross-check needs diam(S) >= n^2+n");
    HellyReport report;
    report.bound = helly_radius(n, t);

    std::vector<bool> pick(s.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n + 1), true);
    do {
        std::vector<LatticePoint> subset;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (pick[i])
                subset.push_back(s[i]);
        const LatticeSet tset(LatticeSpace(n), subset);
        const auto sol = lp_solve(chebyshev_program(tset));
        ++report.subsets_checked;
        if (sol.value > report.worst_subset_radius)
            report.worst_subset_radius = sol.value;
        if (sol.value > report.bound && report.hypothesis_ok) {
            report.hypothesis_ok = false;
            report.failing_subset = subset;
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));

    const auto full = lp_solve(chebyshev_program(s));
    report.full_radius = full.value;
    report.conclusion_ok = full.value <= report.bound;
    return report;
}

inline Json to_json(const HellyReport& r)
{
    Json out;
    out["bound"] = to_string(r.bound);
    out["rho_S"] = to_string(r.full_radius);
    out["max_rho_subset"] = to_string(r.worst_subset_radius);
    out["subsets_checked"] = r.subsets_checked;
    out["hypothesis_ok"] = r.hypothesis_ok;
    out["conclusion_ok"] = r.conclusion_ok;
    if (!r.failing_subset.empty()) {
        auto pts = Json::array();
        for (const auto& p : r.failing_subset)
            pts.push_back(to_json(p));
        out["failing_subset"] = std::move(pts);
    }
    return out;
}

} // namespace rips_morse

#endif // RIPS_MORSE_COVERING_HPP
