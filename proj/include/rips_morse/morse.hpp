#ifndef RIPS_MORSE_MORSE_HPP
#define RIPS_MORSE_MORSE_HPP

/**
 * Discrete Morse theory on the subdivided Rips complex.
 *
 * Vertices are finite nonempty subsets S of the space; the Morse function is
 *     h(S) = diam(S) - (|S| - 1) / n_{diam(S)},
 * which lies in (diam(S) - 1, diam(S)]. The descending link of S is the
 * join of its face part (proper subsets of strictly smaller diameter) and
 * its coface part (proper supersets of equal diameter).
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "covering.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "metric.hpp"
#include "rational.hpp"

namespace rips_morse {

inline constexpr std::size_t kDefaultFaceCap = 16;
inline constexpr std::size_t kDefaultCofaceCap = 6;
inline constexpr std::size_t kDefaultFiltrationCap = 9;

/// Exact h(S); |S| above n_bound means the space violates the cardinality bound.
template <MetricSpace Space>
Rational morse_h(const VertexSetOf<Space>& s, const Space& space)
{
    const Distance d = s.diameter();
    const std::uint64_t bound = space.n_bound(d);
    if (s.size() > bound)
        throw InconsistencyError("|S| = " + std::to_string(s.size()) + " exceeds n_bound = " +
                                 std::to_string(bound) + " at diameter " + std::to_string(d));
    return Rational(d) - Rational(BigInt(s.size() - 1), BigInt(bound));
}

namespace detail {

template <MetricSpace Space>
VertexSetOf<Space> subset_by_mask(const VertexSetOf<Space>& s, std::uint64_t mask, const Space& space)
{
    std::vector<typename Space::point_type> pts;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (mask >> i & 1U)
            pts.push_back(s[i]);
    return VertexSetOf<Space>(space, std::move(pts));
}

template <class Point>
bool is_proper_subset(const VertexSet<Point>& a, const VertexSet<Point>& b)
{
    return a.size() < b.size() && std::includes(b.points().begin(), b.points().end(), a.points().begin(),
                                                a.points().end());
}

} // namespace detail

/// Proper nonempty subsets of S with diameter below diam(S), in set order.
template <MetricSpace Space>
std::vector<VertexSetOf<Space>> face_link_sets(const VertexSetOf<Space>& s, const Space& space,
                                               std::size_t cap = kDefaultFaceCap)
{
    if (s.size() > cap)
        throw SizeGuardError("face link of a " + std::to_string(s.size()) + "-point set exceeds cap " +
                             std::to_string(cap));
    std::vector<VertexSetOf<Space>> out;
    const std::uint64_t full = (std::uint64_t{1} << s.size()) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        auto sub = detail::subset_by_mask(s, mask, space);
        if (sub.diameter() < s.diameter())
            out.push_back(std::move(sub));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Inclusion order on a family of vertex sets, labeled by set_label.
template <MetricSpace Space>
FinitePoset inclusion_poset(const std::vector<VertexSetOf<Space>>& sets, const Space& space)
{
    std::vector<std::string> labels;
    labels.reserve(sets.size());
    for (const auto& x : sets)
        labels.push_back(set_label(x, space));
    return FinitePoset::from_relation(std::move(labels), [&](std::size_t i, std::size_t j) {
        return detail::is_proper_subset(sets[i], sets[j]);
    });
}

template <MetricSpace Space>
FinitePoset face_link_poset(const VertexSetOf<Space>& s, const Space& space, std::size_t cap = kDefaultFaceCap)
{
    return inclusion_poset(face_link_sets(s, space, cap), space);
}

/// Default lattice window: bbox(S) inflated by diam(S) contains every x with max_s d(x,s) <= diam(S).
inline Window coface_window(const LatticeSet& s)
{
    return Window::bounding_box(s.points(), s.diameter());
}

/**
 * Points x outside S with max_s d(x, s) <= diam(S): exactly the points
 * that can be added to S without increasing its diameter. The window must
 * contain the whole ball intersection, which is checked.
 */
inline std::vector<LatticePoint> coface_candidates(const LatticeSet& s, const LatticeSpace& space,
                                                   const Window& window)
{
    const Distance t = s.diameter();
    const LatticeSet anchor(space, {s[0]});
    for (const auto& x : Window::bounding_box(anchor.points(), t).points()) {
        if (window.contains(x))
            continue;
        if (eccentricity(x, s, space) <= t)
            throw WindowTooSmallError("window " + window.str() + " misses coface candidate " + to_string(x));
    }
    std::vector<LatticePoint> out;
    for (auto& x : window.points())
        if (!s.contains(x) && eccentricity(x, s, space) <= t)
            out.push_back(std::move(x));
    return out;
}

inline std::vector<LatticePoint> coface_candidates(const LatticeSet& s, const LatticeSpace& space)
{
    return coface_candidates(s, space, coface_window(s));
}

inline std::vector<PointIndex> coface_candidates(const VertexSet<PointIndex>& s, const FiniteMetricSpace& space)
{
    std::vector<PointIndex> out;
    for (const auto& x : space.points())
        if (!s.contains(x) && eccentricity(x, s, space) <= s.diameter())
            out.push_back(x);
    return out;
}

/// Supersets S + A (A nonempty subset of the candidates) of diameter diam(S).
template <MetricSpace Space>
std::vector<VertexSetOf<Space>> coface_link_sets(const VertexSetOf<Space>& s,
                                                 const std::vector<typename Space::point_type>& candidates,
                                                 const Space& space, std::size_t cap = kDefaultCofaceCap)
{
    if (candidates.size() > cap)
        throw SizeGuardError(std::to_string(candidates.size()) + " coface candidates exceed cap " +
                             std::to_string(cap) + "; use the nerve path");
    std::vector<VertexSetOf<Space>> out;
    const std::uint64_t full = std::uint64_t{1} << candidates.size();
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        std::vector<typename Space::point_type> pts(s.points().begin(), s.points().end());
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (mask >> i & 1U)
                pts.push_back(candidates[i]);
        VertexSetOf<Space> bigger(space, std::move(pts));
        if (bigger.diameter() == s.diameter())
            out.push_back(std::move(bigger));
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <MetricSpace Space>
SimplicialComplex coface_link_complex(const VertexSetOf<Space>& s,
                                      const std::vector<typename Space::point_type>& candidates, const Space& space,
                                      std::size_t cap = kDefaultCofaceCap)
{
    return order_complex(inclusion_poset(coface_link_sets(s, candidates, space, cap), space));
}

template <MetricSpace Space>
SimplicialComplex descending_link(const VertexSetOf<Space>& s,
                                  const std::vector<typename Space::point_type>& candidates, const Space& space,
                                  std::size_t face_cap = kDefaultFaceCap, std::size_t coface_cap = kDefaultCofaceCap)
{
    return join(order_complex(face_link_poset(s, space, face_cap)),
                coface_link_complex(s, candidates, space, coface_cap));
}

inline SimplicialComplex descending_link(const LatticeSet& s, const LatticeSpace& space, const Window& window,
                                         std::size_t face_cap = kDefaultFaceCap,
                                         std::size_t coface_cap = kDefaultCofaceCap)
{
    return descending_link(s, coface_candidates(s, space, window), space, face_cap, coface_cap);
}

inline SimplicialComplex descending_link(const VertexSet<PointIndex>& s, const FiniteMetricSpace& space,
                                         std::size_t face_cap = kDefaultFaceCap,
                                         std::size_t coface_cap = kDefaultCofaceCap)
{
    return descending_link(s, coface_candidates(s, space), space, face_cap, coface_cap);
}

/**
 * Verdict for a join from the verdicts of its factors: a contractible
 * factor makes the join contractible, and over a field the join has
 * H~_{i+j+1} = H~_i (x) H~_j, so two refuted factors refute the join.
 */
inline ContractibilityVerdict join_verdict(const ContractibilityVerdict& face, const ContractibilityVerdict& coface)
{
    if (face.certified())
        return ContractibilityVerdict::join_certified("face-link");
    if (coface.certified())
        return ContractibilityVerdict::join_certified("coface-link");
    if (face.refuted() && coface.refuted()) {
        const auto& a = std::get<BettiWitness>(face.witness());
        const auto& b = std::get<BettiWitness>(coface.witness());
        return ContractibilityVerdict::homology(a.index + b.index + 1, a.value * b.value);
    }
    return ContractibilityVerdict::unknown("no certificate for either join factor");
}

enum class LinkMethod { ClosureOperator, Nerve, Direct, None };

inline std::string to_string(LinkMethod m)
{
    switch (m) {
    case LinkMethod::ClosureOperator:
        return "closure-operator";
    case LinkMethod::Nerve:
        return "nerve";
    case LinkMethod::Direct:
        return "direct";
    case LinkMethod::None:
        break;
    }
    return "none";
}

struct LinkAnalysisConfig {
    std::size_t face_cap = kDefaultFaceCap;
    std::size_t coface_cap = kDefaultCofaceCap;
    /// Below n^2+n, run the closure test with radius t-1 (sound, exploratory only).
    bool exploratory_closure = false;
    /// Also run the direct coface path when the nerve path ran, and compare.
    bool cross_check = false;
};

template <class Point>
struct DescendingLinkReport {
    DescendingLinkReport(VertexSet<Point> s, Rational h_value) : subject(std::move(s)), h(std::move(h_value)) {}

    VertexSet<Point> subject;
    Rational h;
    std::optional<Rational> radius;
    ContractibilityVerdict face_link = ContractibilityVerdict::unknown("not computed");
    ContractibilityVerdict coface_link = ContractibilityVerdict::unknown("not computed");
    ContractibilityVerdict joined = ContractibilityVerdict::unknown("not computed");
    LinkMethod method = LinkMethod::None;
    std::optional<std::size_t> candidate_count;
    std::optional<std::size_t> center_count;
    std::optional<ContractibilityVerdict> nerve_verdict;
    std::optional<ContractibilityVerdict> direct_coface_verdict;
    std::vector<std::string> notes;
    std::vector<std::string> violations;
};

namespace detail {

template <MetricSpace Space>
void closure_operator_test(DescendingLinkReport<typename Space::point_type>& report, const Rational& radius,
                           const Space& space, const LinkAnalysisConfig& config)
{
    const auto& s = report.subject;
    const Distance t = s.diameter();
    for (const auto& y : s.points()) {
        if (Rational(eccentricity(y, s, space)) > radius)
            continue;
        report.method = LinkMethod::ClosureOperator;
        const auto faces = face_link_sets(s, space, config.face_cap);
        for (const auto& f : faces) {
            std::vector<typename Space::point_type> pts(f.points().begin(), f.points().end());
            pts.push_back(y);
            const VertexSetOf<Space> closed(space, std::move(pts));
            // S' <= S' + {y}, and S' + {y} must stay in the face link
            if (!(closed.diameter() < t && is_proper_subset(closed, s)) ||
                !std::includes(closed.points().begin(), closed.points().end(), f.points().begin(),
                               f.points().end())) {
                report.violations.push_back("closure operator leaves the face link at " + set_label(f, space));
                return;
            }
        }
        report.face_link = ContractibilityVerdict::closure(space.label(y), faces.size());
        return;
    }
}

template <MetricSpace Space>
void direct_path(DescendingLinkReport<typename Space::point_type>& report,
                 const std::vector<typename Space::point_type>& candidates, const Space& space,
                 const LinkAnalysisConfig& config, bool need_face, bool need_coface)
{
    const auto& s = report.subject;
    if (need_face) {
        try {
            report.face_link = contractibility_verdict(order_complex(face_link_poset(s, space, config.face_cap)));
            if (report.face_link.certified() && report.method == LinkMethod::None)
                report.method = LinkMethod::Direct;
        } catch (const SizeGuardError& e) {
            report.notes.push_back(e.what());
        }
    }
    if (need_coface) {
        if (candidates.size() > config.coface_cap) {
            report.notes.push_back(std::to_string(candidates.size()) + " coface candidates exceed cap " +
                                   std::to_string(config.coface_cap));
            return;
        }
        auto verdict = contractibility_verdict(coface_link_complex(s, candidates, space, config.coface_cap));
        report.direct_coface_verdict = verdict;
        if (!report.coface_link.certified()) {
            report.coface_link = std::move(verdict);
            if (report.coface_link.certified() && report.method == LinkMethod::None)
                report.method = LinkMethod::Direct;
        }
    }
}

inline void finish(auto& report)
{
    report.joined = join_verdict(report.face_link, report.coface_link);
    if (report.nerve_verdict && report.direct_coface_verdict) {
        const bool clash = (report.nerve_verdict->certified() && report.direct_coface_verdict->refuted()) ||
                           (report.nerve_verdict->refuted() && report.direct_coface_verdict->certified());
        if (clash)
            report.violations.push_back("nerve and direct coface verdicts disagree");
    }
}

} // namespace detail

/**
 * Runs, in order: the closure-operator face-link test (some y in S within
 * r_t of all of S), the nerve test on the coface link (Rips_t of the
 * enclosing centers is a cone), and the direct homology/collapse fallback
 * when the coface candidate count is within the cap.
 */
inline DescendingLinkReport<LatticePoint> analyze_descending_link(const LatticeSet& s, const LatticeSpace& space,
                                                                  std::optional<Window> window = std::nullopt,
                                                                  const LinkAnalysisConfig& config = {})
{
    DescendingLinkReport<LatticePoint> report{s, morse_h(s, space)};
    const Distance t = s.diameter();
    const std::size_t n = space.dimension();
    const bool covering_defined = t >= covering_threshold(n);
    if (covering_defined)
        report.radius = r_t(n, t);
    else if (config.exploratory_closure && t >= 1)
        report.radius = Rational(t - 1);
    else
        report.notes.push_back("r_t not applicable below t = " + std::to_string(covering_threshold(n)));

    if (report.radius)
        detail::closure_operator_test(report, *report.radius, space, config);

    if (covering_defined && !report.face_link.certified()) {
        const Window centers_window = window ? *window : center_search_window(s, *report.radius);
        const auto centers = enclosing_center_set(s, *report.radius, centers_window);
        report.center_count = centers.size();
        if (centers.empty()) {
            report.violations.push_back("no lattice center within r_t of S");
        } else {
            const auto nerve = nerve_of_coface_cover(s, std::span<const LatticePoint>(centers), t, space);
            if (const auto apex = is_cone(nerve)) {
                report.nerve_verdict = ContractibilityVerdict::nerve(nerve.label(*apex), centers.size());
                report.coface_link = *report.nerve_verdict;
                report.method = LinkMethod::Nerve;
            } else {
                report.nerve_verdict = contractibility_verdict(nerve);
                report.notes.push_back("nerve of the star cover is not a cone");
            }
        }
    }

    const bool need_face = !report.face_link.certified() && !report.coface_link.certified();
    const bool need_coface =
        !report.face_link.certified() && (!report.coface_link.certified() || config.cross_check);
    if (need_face || need_coface || (config.cross_check && report.nerve_verdict)) {
        const Window cw = window ? *window : coface_window(s);
        const auto candidates = coface_candidates(s, space, cw);
        report.candidate_count = candidates.size();
        detail::direct_path(report, candidates, space, config, need_face,
                            need_coface || (config.cross_check && report.nerve_verdict.has_value()));
    }
    detail::finish(report);
    return report;
}

/// Matrix spaces have no covering radius; links are computed directly.
inline DescendingLinkReport<PointIndex> analyze_descending_link(const VertexSet<PointIndex>& s,
                                                                const FiniteMetricSpace& space,
                                                                const LinkAnalysisConfig& config = {})
{
    DescendingLinkReport<PointIndex> report{s, morse_h(s, space)};
    report.notes.push_back("r_t not applicable to a distance-matrix space");
    const auto candidates = coface_candidates(s, space);
    report.candidate_count = candidates.size();
    detail::direct_path(report, candidates, space, config, true, true);
    detail::finish(report);
    return report;
}

template <class Point, MetricSpace Space>
Json to_json(const DescendingLinkReport<Point>& r, const Space& space)
{
    Json out;
    out["subject"] = to_json(r.subject);
    out["label"] = set_label(r.subject, space);
    out["diameter"] = r.subject.diameter();
    out["h"] = to_string(r.h);
    out["radius"] = r.radius ? Json(to_string(*r.radius)) : Json(nullptr);
    out["method"] = to_string(r.method);
    out["face_link"] = to_json(r.face_link);
    out["coface_link"] = to_json(r.coface_link);
    out["joined"] = to_json(r.joined);
    out["candidates"] = r.candidate_count ? Json(*r.candidate_count) : Json(nullptr);
    out["centers"] = r.center_count ? Json(*r.center_count) : Json(nullptr);
    out["notes"] = r.notes;
    out["violations"] = r.violations;
    return out;
}

struct VerificationReport {
    std::string check;
    std::string status; // pass, vacuous-pass, not-asserted, failure
    bool passed = true;
    Json summary = Json::object();
    Json items = Json::array();
    Json violations = Json::array();
};

/**
 * Morse-lemma consistency at the homology level: for every S with
 * s < h(S) <= t the descending link verdict is computed; if all are
 * certified, Rips_s and Rips_t must have equal reduced Betti vectors.
 */
inline VerificationReport filtration_check(const FiniteMetricSpace& space, Distance s, Distance t,
                                           std::size_t cap = kDefaultFiltrationCap,
                                           const LinkAnalysisConfig& config = {})
{
    if (!(s < t))
        throw InputError("filtration check needs s < t");
    if (s < 0)
        throw InputError("filtration scales must be nonnegative");
    if (space.size() > cap)
        throw SizeGuardError("filtration check on " + std::to_string(space.size()) + " points exceeds cap " +
                             std::to_string(cap));
    VerificationReport report;
    report.check = "filtration";
    const std::uint64_t full = (std::uint64_t{1} << space.size()) - 1;
    std::vector<VertexSet<PointIndex>> band;
    const VertexSet<PointIndex> everything(space, space.points());
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        auto subset = detail::subset_by_mask(everything, mask, space);
        const Rational h = morse_h(subset, space);
        if (Rational(s) < h && h <= Rational(t))
            band.push_back(std::move(subset));
    }
    std::sort(band.begin(), band.end());

    std::size_t certified = 0;
    std::size_t refuted = 0;
    for (const auto& subject : band) {
        const auto link = analyze_descending_link(subject, space, config);
        certified += link.joined.certified();
        refuted += link.joined.refuted();
        report.items.push_back(to_json(link, space));
        for (const auto& v : link.violations)
            report.violations.push_back(Json{{"subject", set_label(subject, space)}, {"kind", v}});
    }
    const bool all_certified = certified == band.size();
    const auto betti_s = trimmed(reduced_betti(rips_complex(space, s)));
    const auto betti_t = trimmed(reduced_betti(rips_complex(space, t)));

    report.summary["band_size"] = band.size();
    report.summary["certified"] = certified;
    report.summary["not_contractible"] = refuted;
    report.summary["unknown"] = band.size() - certified - refuted;
    report.summary["betti_s"] = betti_s;
    report.summary["betti_t"] = betti_t;
    if (band.empty()) {
        report.status = "vacuous-pass";
    } else if (!all_certified) {
        report.status = "not-asserted";
    } else if (betti_s == betti_t) {
        report.status = "pass";
    } else {
        report.status = "failure";
        report.violations.push_back(Json{{"kind", "betti-mismatch"}, {"betti_s", betti_s}, {"betti_t", betti_t}});
    }
    report.passed = report.violations.empty();
    report.summary["status"] = report.status;
    return report;
}

} // namespace rips_morse

#endif // RIPS_MORSE_MORSE_HPP
