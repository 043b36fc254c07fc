#ifndef RIPS_MORSE_CAMPAIGN_HPP
#define RIPS_MORSE_CAMPAIGN_HPP

/**
 * Verification campaigns behind the command-line tool. Each campaign
 * returns a report with the fixed top-level layout
 *     {"config": ..., "summary": ..., "items": [...], "violations": [...]}
 * and an exit code: 0 all checks passed, 1 property violation, 2 usage.
 * Items are independent and may be evaluated on several threads; results
 * are merged in item order so reports do not depend on scheduling.
 */

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "canonical.hpp"
#include "complex.hpp"
#include "covering.hpp"
#include "homology.hpp"
#include "metric.hpp"
#include "morse.hpp"

namespace rips_morse {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

enum class CampaignMode { Exhaustive, Random };

struct CampaignConfig {
    std::size_t n = 2;
    Distance t = 0;
    std::size_t min_size = 2;
    std::size_t max_size = 4;
    std::optional<Window> window;
    CampaignMode mode = CampaignMode::Exhaustive;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    std::size_t face_cap = kDefaultFaceCap;
    std::size_t coface_cap = kDefaultCofaceCap;
    bool helly = false;
    std::size_t threads = 0; // 0: RIPS_MORSE_THREADS or hardware concurrency
};

struct CampaignOutcome {
    Json report;
    int exit_code = kExitOk;
};

inline std::size_t worker_count(std::size_t requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("RIPS_MORSE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw InputError(std::string("RIPS_MORSE_THREADS must be a positive integer, got '") + env + "'");
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// out[i] = fn(i) for i < count, on up to `threads` workers.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, std::size_t threads, Fn fn)
{
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](std::size_t worker) {
        try {
            for (std::size_t i = worker; i < count; i += threads)
                slots[i] = fn(i);
        } catch (...) {
            errors[worker] = std::current_exception();
        }
    };
    if (threads <= 1 || count <= 1) {
        threads = 1;
        errors.resize(1);
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < threads; ++w)
            pool.emplace_back(work, w);
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

inline std::string to_string(CampaignMode m)
{
    return m == CampaignMode::Exhaustive ? "exhaustive" : "random";
}

inline Window campaign_window(const CampaignConfig& c)
{
    return c.window ? *c.window : default_enumeration_window(c.n, c.t);
}

inline Json to_json(const CampaignConfig& c)
{
    Json out;
    out["n"] = c.n;
    out["t"] = c.t;
    out["min_size"] = c.min_size;
    out["max_size"] = c.max_size;
    out["window"] = campaign_window(c).str();
    out["mode"] = to_string(c.mode);
    if (c.mode == CampaignMode::Random) {
        out["samples"] = c.samples;
        out["seed"] = c.seed;
    }
    out["face_cap"] = c.face_cap;
    out["coface_cap"] = c.coface_cap;
    out["helly"] = c.helly;
    return out;
}

/// The campaign's sets: canonical orbit representatives or seeded samples.
inline std::vector<LatticeSet> campaign_sets(const CampaignConfig& c)
{
    const Window window = campaign_window(c);
    if (c.mode == CampaignMode::Exhaustive) {
        auto sets = enumerate_canonical_sets(c.n, c.t, c.max_size, window);
        std::erase_if(sets, [&](const LatticeSet& s) { return s.size() < c.min_size; });
        return sets;
    }
    auto sets = sample_sets(c.n, c.t, c.min_size, c.max_size, window, c.samples, c.seed);
    std::sort(sets.begin(), sets.end());
    return sets;
}

inline Json report_skeleton(Json config)
{
    Json out;
    out["config"] = std::move(config);
    out["summary"] = Json::object();
    out["items"] = Json::array();
    out["violations"] = Json::array();
    return out;
}

inline std::string point_list(const LatticeSet& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? " " : "") + to_string(s[i]);
    return out;
}

/// Covering hypothesis, lattice covering radius and (optionally) Helly checks.
inline CampaignOutcome run_verify_covering(const CampaignConfig& config)
{
    if (config.t < covering_threshold(config.n))
        throw InputError("verify-covering needs t >= n^2+n = " + std::to_string(covering_threshold(config.n)));
    const LatticeSpace space(config.n);
    const Rational radius = r_t(config.n, config.t);
    const auto sets = campaign_sets(config);

    struct Item {
        Json json;
        std::vector<Json> violations;
        Rational min_radius;
        std::size_t centers = 0;
    };
    const auto items = parallel_map<Item>(sets.size(), worker_count(config.threads), [&](std::size_t i) {
        const auto& s = sets[i];
        const auto covering = verify_covering_hypothesis(s, space);
        const auto ball = min_enclosing_lattice_ball(s);
        Item item{to_json(covering), {}, ball.radius, covering.centers.size()};
        item.json["min_ball"] = Json{{"center", to_json(ball.center)}, {"radius", to_string(ball.radius)}};
        for (const auto& v : covering.violations)
            item.violations.push_back(Json{{"S", to_json(s)}, {"kind", v.kind}, {"witness", v.witness}});
        if (ball.radius > radius)
            item.violations.push_back(
                Json{{"S", to_json(s)}, {"kind", "covering-bound"}, {"witness", item.json["min_ball"]}});
        if (config.helly && s.size() > config.n + 1) {
            const auto helly = helly_crosscheck(s);
            item.json["helly"] = to_json(helly);
            if (!helly.ok())
                item.violations.push_back(Json{{"S", to_json(s)}, {"kind", "helly"}, {"witness", item.json["helly"]}});
        }
        return item;
    });

    CampaignOutcome outcome{report_skeleton(to_json(config))};
    Rational worst = 0;
    std::size_t max_centers = 0;
    for (const auto& item : items) {
        outcome.report["items"].push_back(item.json);
        for (const auto& v : item.violations)
            outcome.report["violations"].push_back(v);
        worst = std::max(worst, item.min_radius);
        max_centers = std::max(max_centers, item.centers);
    }
    auto& summary = outcome.report["summary"];
    summary["items"] = items.size();
    summary["violations"] = outcome.report["violations"].size();
    summary["r_t"] = to_string(radius);
    summary["max_min_lattice_radius"] = to_string(worst);
    summary["max_Y_size"] = max_centers;
    outcome.exit_code = outcome.report["violations"].empty() ? kExitOk : kExitViolation;
    return outcome;
}

struct LinkTally {
    std::size_t certified = 0;
    std::size_t not_contractible = 0;
    std::size_t unknown = 0;
    std::size_t closure = 0;
    std::size_t nerve = 0;
    std::size_t direct = 0;

    void add(const DescendingLinkReport<LatticePoint>& r)
    {
        certified += r.joined.certified();
        not_contractible += r.joined.refuted();
        unknown += r.joined.status() == ContractibilityStatus::Unknown;
        closure += r.method == LinkMethod::ClosureOperator;
        nerve += r.method == LinkMethod::Nerve;
        direct += r.method == LinkMethod::Direct;
    }

    Json json() const
    {
        return Json{{"certified", certified}, {"not_contractible", not_contractible}, {"unknown", unknown},
                    {"closure_operator", closure}, {"nerve", nerve}, {"direct", direct}};
    }
};

inline LinkAnalysisConfig link_config(const CampaignConfig& c)
{
    LinkAnalysisConfig out;
    out.face_cap = c.face_cap;
    out.coface_cap = c.coface_cap;
    return out;
}

/// Descending links of diameter-t sets. NotContractible is a violation only
/// for t >= n^2+n; below that the campaign is observational.
inline CampaignOutcome run_verify_links(const CampaignConfig& config)
{
    const LatticeSpace space(config.n);
    const bool contract = config.t >= covering_threshold(config.n);
    const auto sets = campaign_sets(config);
    const auto lcfg = link_config(config);
    const auto reports = parallel_map<DescendingLinkReport<LatticePoint>>(
        sets.size(), worker_count(config.threads),
        [&](std::size_t i) { return analyze_descending_link(sets[i], space, std::nullopt, lcfg); });

    CampaignOutcome outcome{report_skeleton(to_json(config))};
    LinkTally tally;
    Json unknown = Json::array();
    for (const auto& r : reports) {
        tally.add(r);
        if (r.joined.status() == ContractibilityStatus::Unknown)
            unknown.push_back(to_json(r.subject));
        outcome.report["items"].push_back(to_json(r, space));
        for (const auto& v : r.violations)
            outcome.report["violations"].push_back(Json{{"S", to_json(r.subject)}, {"kind", v}});
        if (contract && r.joined.refuted())
            outcome.report["violations"].push_back(
                Json{{"S", to_json(r.subject)}, {"kind", "descending-link-not-contractible"},
                     {"witness", to_json(r.joined)}});
    }
    auto& summary = outcome.report["summary"];
    summary["items"] = reports.size();
    summary["regime"] = contract ? "theorem" : "exploratory";
    summary["verdicts"] = tally.json();
    summary["warnings"] = tally.unknown;
    summary["unknown_sets"] = std::move(unknown);
    summary["violations"] = outcome.report["violations"].size();
    outcome.exit_code = contract && !outcome.report["violations"].empty() ? kExitViolation : kExitOk;
    return outcome;
}

/**
 * Observational scan of the conjectured range: the row for scale t looks
 * at sets of diameter t+1, whose descending links control the inclusion
 * Rips_t -> Rips_{t+1}. Never fails.
 */
inline CampaignOutcome run_conjecture_scan(const CampaignConfig& base, Distance t_min, Distance t_max)
{
    if (t_min < 1 || t_min > t_max)
        throw InputError("conjecture scan needs 1 <= t_min <= t_max");
    const LatticeSpace space(base.n);
    Json config = to_json(base);
    config.erase("t");
    config.erase("window");
    config["t_min"] = t_min;
    config["t_max"] = t_max;
    CampaignOutcome outcome{report_skeleton(std::move(config))};
    LinkAnalysisConfig lcfg = link_config(base);
    lcfg.exploratory_closure = true;
    for (Distance t = t_min; t <= t_max; ++t) {
        CampaignConfig c = base;
        c.t = t + 1;
        c.window = base.window ? base.window : std::optional<Window>(default_enumeration_window(base.n, t + 1));
        const auto sets = campaign_sets(c);
        struct Row {
            DescendingLinkReport<LatticePoint> link;
            Rational radius;
        };
        const auto rows = parallel_map<Row>(sets.size(), worker_count(base.threads), [&](std::size_t i) {
            return Row{analyze_descending_link(sets[i], space, std::nullopt, lcfg),
                       min_enclosing_lattice_ball(sets[i]).radius};
        });
        LinkTally tally;
        Rational worst = 0;
        for (const auto& r : rows) {
            tally.add(r.link);
            worst = std::max(worst, r.radius);
        }
        Json item;
        item["t"] = t;
        item["link_diameter"] = t + 1;
        item["sets"] = rows.size();
        item["certified"] = tally.certified;
        item["not_contractible"] = tally.not_contractible;
        item["unknown"] = tally.unknown;
        item["max_enclosing_radius"] = to_string(worst);
        outcome.report["items"].push_back(std::move(item));
    }
    outcome.report["summary"]["rows"] = outcome.report["items"].size();
    return outcome;
}

inline CampaignOutcome run_rips_betti(const FiniteMetricSpace& space, Distance t, std::optional<std::size_t> max_dim)
{
    if (t < 0)
        throw InputError("scale t must be nonnegative");
    Json config;
    config["points"] = space.size();
    config["t"] = t;
    config["max_dim"] = max_dim ? Json(*max_dim) : Json(nullptr);
    CampaignOutcome outcome{report_skeleton(std::move(config))};

    const auto complex = rips_complex(space, t, max_dim);
    std::size_t clique_number = 0;
    {
        Graph g(space.size());
        for (std::size_t i = 0; i < space.size(); ++i)
            for (std::size_t j = i + 1; j < space.size(); ++j)
                if (space.distance({i}, {j}) <= t)
                    g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
        for (const auto& c : maximal_cliques(g))
            clique_number = std::max(clique_number, c.size());
    }
    const bool truncated = max_dim && clique_number > *max_dim + 1;
    auto& summary = outcome.report["summary"];
    summary["vertices"] = complex.vertex_count();
    summary["dimension"] = complex.dimension();
    summary["maximal_simplices"] = complex.maximal_simplices().size();
    summary["truncated"] = truncated;
    summary["betti"] = reduced_betti(complex);
    summary["verdict"] = to_json(contractibility_verdict(complex));
    return outcome;
}

inline CampaignOutcome run_filtration_check(const FiniteMetricSpace& space, Distance s, Distance t,
                                            std::size_t cap = kDefaultFiltrationCap,
                                            const LinkAnalysisConfig& lcfg = {})
{
    Json config;
    config["points"] = space.size();
    config["s"] = s;
    config["t"] = t;
    config["cap"] = cap;
    config["coface_cap"] = lcfg.coface_cap;
    CampaignOutcome outcome{report_skeleton(std::move(config))};
    auto report = filtration_check(space, s, t, cap, lcfg);
    outcome.report["summary"] = std::move(report.summary);
    outcome.report["items"] = std::move(report.items);
    outcome.report["violations"] = std::move(report.violations);
    outcome.exit_code = report.passed ? kExitOk : kExitViolation;
    return outcome;
}

namespace detail {

inline std::string csv_field(const Json& value)
{
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (text.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : text) {
            if (c == '"')
                quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    return text;
}

} // namespace detail

/// One CSV row per item, columns from the first item's scalar fields.
inline std::string render_csv(const Json& report)
{
    std::ostringstream out;
    const auto& items = report["items"];
    if (items.empty()) {
        for (auto it = report["summary"].begin(); it != report["summary"].end(); ++it)
            out << detail::csv_field(it.key()) << ',' << detail::csv_field(it.value()) << '\n';
        return out.str();
    }
    std::vector<std::string> columns;
    for (auto it = items.front().begin(); it != items.front().end(); ++it)
        columns.push_back(it.key());
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& item : items) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const auto& value = item.contains(columns[i]) ? item[columns[i]] : Json(nullptr);
            Json flat = value;
            if (value.is_object() && value.contains("status"))
                flat = value["status"];
            out << (i ? "," : "") << detail::csv_field(flat);
        }
        out << '\n';
    }
    return out.str();
}

inline std::string render_json(const Json& report)
{
    return report.dump(2) + "\n";
}

} // namespace rips_morse

#endif // RIPS_MORSE_CAMPAIGN_HPP
