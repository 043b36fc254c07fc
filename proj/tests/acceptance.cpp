// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

#include "support.hpp"

using namespace rips_morse;

namespace {

// Wall-clock budgets in seconds, one per criterion.
constexpr double kBudget1 = 1;
constexpr double kBudget2 = 300;
constexpr double kBudget4 = 30;
constexpr double kBudget5 = 600;
constexpr double kBudget6 = 300;
constexpr double kBudget7 = 600;
constexpr double kBudget8 = 600;
constexpr double kBudget9 = 120;
constexpr double kBudget10 = 60;

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Rational q(long a, long b = 1)
{
    return make_rational(a, b);
}

const Window& square6()
{
    static const Window w(LatticePoint{0, 0}, LatticePoint{6, 6});
    return w;
}

const std::vector<LatticeSet>& exhaustive_z2_t6()
{
    static const auto sets = enumerate_canonical_sets(2, 6, 4, square6());
    return sets;
}

const std::vector<LatticeSet>& random_z2_t6()
{
    static const auto sets = sample_sets(2, 6, 5, 10, square6(), 10000, kSeed);
    return sets;
}

Outcome criterion1()
{
    Outcome out;
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const long nl = static_cast<long>(n);
        const Distance lo = covering_threshold(n);
        for (Distance t = lo; t <= lo + 10; ++t) {
            const Rational expected = q(t * nl, nl + 1) + q(nl, 2);
            const Rational got = r_t(n, t);
            ++checked;
            if (got != expected || !(got <= q(t) - q(nl, 2))) {
                out.pass = false;
                out.detail += " mismatch at n=" + std::to_string(n) + " t=" + std::to_string(t);
            }
        }
    }
    out.detail = std::to_string(checked) + " (n,t) pairs" + out.detail;
    return out;
}

struct CoveringTally {
    std::size_t items = 0;
    std::size_t bound_violations = 0;
    std::size_t proximity_violations = 0;
    Rational worst = 0;
};

const CoveringTally& covering_campaign()
{
    static const CoveringTally tally = [] {
        CoveringTally c;
        const LatticeSpace z2(2);
        const Rational bound = r_t(2, 6);
        for (const auto* family : {&exhaustive_z2_t6(), &random_z2_t6()})
            for (const auto& s : *family) {
                if (s.diameter() != 6)
                    continue;
                ++c.items;
                const auto ball = min_enclosing_lattice_ball(s);
                c.worst = std::max(c.worst, ball.radius);
                if (ball.radius > bound)
                    ++c.bound_violations;
                const auto report = verify_covering_hypothesis(s, z2);
                bool near = report.centers_nonempty;
                for (const auto& y : report.centers)
                    near = near && l1_distance(report.y0, y) <= 6;
                if (!near || !report.proximity_ok)
                    ++c.proximity_violations;
            }
        return c;
    }();
    return tally;
}

Outcome criterion2()
{
    const auto& c = covering_campaign();
    return {c.bound_violations == 0 && c.items > 10000,
            std::to_string(c.items) + " sets (" + std::to_string(exhaustive_z2_t6().size()) +
                " exhaustive), max lattice radius " + to_string(c.worst) + " <= 5, " +
                std::to_string(c.bound_violations) + " violations"};
}

Outcome criterion3()
{
    const auto& c = covering_campaign();
    return {c.proximity_violations == 0 && c.items > 0,
            std::to_string(c.items) + " sets, " + std::to_string(c.proximity_violations) + " violations"};
}

Outcome criterion4()
{
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    std::size_t violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::size_t n = dim(rng);
        const auto s = support::random_lattice_set(n, size(rng), -3, 3, rng);
        const Rational h = morse_h(s, LatticeSpace(n));
        if (!(h > q(s.diameter() - 1) && h <= q(s.diameter())))
            ++violations;
    }
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = dim(rng);
        const LatticeSpace space(n);
        const auto pool = support::random_lattice_set(n, 8, -3, 3, rng);
        std::vector<LatticePoint> order(pool.points().begin(), pool.points().end());
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::pair<Distance, Rational>> chain;
        for (std::size_t k = 1; k <= order.size(); ++k) {
            const LatticeSet link(space, {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)});
            chain.emplace_back(link.diameter(), morse_h(link, space));
        }
        for (std::size_t a = 0; a < chain.size(); ++a)
            for (std::size_t b = a + 1; b < chain.size(); ++b) {
                const auto& [da, ha] = chain[a];
                const auto& [db, hb] = chain[b];
                const bool ok = da == db ? ha > hb : ha < hb;
                if (!ok || ha == hb)
                    ++violations;
            }
    }
    return {violations == 0, "10000 sets and 1000 chains, " + std::to_string(violations) + " violations"};
}

Outcome criterion5()
{
    const auto sets = sample_sets(2, 6, 4, 8, square6(), 1000, kSeed + 5);
    std::size_t violations = 0;
    Rational worst = 0;
    for (const auto& s : sets) {
        const auto h = helly_crosscheck(s);
        worst = std::max(worst, std::max(h.worst_subset_radius, h.full_radius));
        if (!h.ok() || h.worst_subset_radius > 4 || h.full_radius > 4)
            ++violations;
    }
    return {violations == 0 && sets.size() == 1000,
            std::to_string(sets.size()) + " sets, max radius " + to_string(worst) + " <= 4, " +
                std::to_string(violations) + " violations"};
}

Outcome criterion6()
{
    std::size_t sets = 0;
    std::size_t literal_mismatch = 0;
    std::size_t fine_mismatch = 0;
    std::string first;
    for (std::size_t n = 1; n <= 2; ++n)
        for (Distance t = 0; t <= 6; ++t) {
            const auto family = t == 0 ? std::vector<LatticeSet>{LatticeSet(LatticeSpace(n), {LatticePoint(
                                                                                       std::vector<Coord>(n, 0))})}
                                       : enumerate_canonical_sets(n, t, 5, default_enumeration_window(n, t));
            for (const auto& s : family) {
                ++sets;
                const Rational lp = chebyshev_center_l1(s).radius;
                const auto points = support::int_points(s);
                const auto coarse = oracle::chebyshev_grid(points, static_cast<long>(n) + 1);
                const auto fine = oracle::chebyshev_grid(points, n == 1 ? 4 : 12);
                if (lp != make_rational(coarse.num, coarse.den)) {
                    if (literal_mismatch++ == 0)
                        first = to_json(s).dump() + " LP " + to_string(lp) + " grid " +
                                to_string(make_rational(coarse.num, coarse.den));
                }
                if (lp != make_rational(fine.num, fine.den))
                    ++fine_mismatch;
            }
        }
    std::string detail = std::to_string(sets) + " sets, " + std::to_string(literal_mismatch) +
                         " mismatches against the 1/(n+1) grid";
    if (!first.empty())
        detail += " (first " + first + ")";
    detail += "; " + std::to_string(fine_mismatch) + " against the 1/lcm(n+1,4) grid";
    return {literal_mismatch == 0 && fine_mismatch == 0, detail};
}

struct LinkTallies {
    std::size_t sets = 0;
    std::size_t closure = 0;
    std::size_t nerve = 0;
    std::size_t failures = 0;
    std::vector<LatticeSet> nerve_small;
    std::string first_failure;
};

const LinkTallies& link_campaign()
{
    static const LinkTallies tally = [] {
        LinkTallies c;
        const LatticeSpace z2(2);
        for (const auto& s : exhaustive_z2_t6()) {
            ++c.sets;
            const auto r = analyze_descending_link(s, z2);
            const bool closure = r.face_link.certified() &&
                                 std::holds_alternative<ClosureWitness>(r.face_link.witness()) &&
                                 r.violations.empty();
            const bool nerve = r.coface_link.certified() && std::holds_alternative<NerveWitness>(r.coface_link.witness());
            c.closure += closure;
            c.nerve += nerve && !closure;
            if (!(closure || nerve) || !r.joined.certified()) {
                if (c.failures++ == 0)
                    c.first_failure = to_json(r, z2).dump();
            }
            if (r.nerve_verdict && coface_candidates(s, z2, coface_window(s)).size() <= kDefaultCofaceCap)
                c.nerve_small.push_back(s);
        }
        return c;
    }();
    return tally;
}

Outcome criterion7()
{
    const auto& c = link_campaign();
    std::string detail = std::to_string(c.sets) + " sets: " + std::to_string(c.closure) + " closure, " +
                         std::to_string(c.nerve) + " nerve, " + std::to_string(c.failures) + " other";
    if (!c.first_failure.empty())
        detail += " (first " + c.first_failure + ")";
    return {c.failures == 0 && c.sets > 0, detail};
}

Outcome criterion8()
{
    std::size_t compared = 0;
    std::size_t disagreements = 0;
    auto compare = [&](const LatticeSet& s, const LatticeSpace& space) {
        const Distance t = s.diameter();
        const auto centers = enclosing_center_set(s, space);
        const auto nerve = nerve_of_coface_cover(s, std::span<const LatticePoint>(centers), t, space);
        const auto direct = coface_link_complex(s, coface_candidates(s, space, coface_window(s)), space);
        const bool nerve_trivial = is_acyclic(reduced_betti(nerve));
        const bool direct_trivial = !direct.empty() && is_acyclic(reduced_betti(direct));
        ++compared;
        disagreements += nerve_trivial != direct_trivial;
    };
    const std::size_t from7 = link_campaign().nerve_small.size();
    for (const auto& s : link_campaign().nerve_small)
        compare(s, LatticeSpace(2));
    // t = 1 lies below the covering threshold for n = 1, so no center set exists there
    const LatticeSpace z1(1);
    std::size_t from_line = 0;
    for (Distance t = covering_threshold(1); t <= 4; ++t)
        for (const auto& s : enumerate_canonical_sets(1, t, static_cast<std::size_t>(t) + 1,
                                                      default_enumeration_window(1, t))) {
            LinkAnalysisConfig config;
            const auto r = analyze_descending_link(s, z1, std::nullopt, config);
            if (!r.nerve_verdict)
                continue;
            ++from_line;
            compare(s, z1);
        }
    return {disagreements == 0 && compared > 0,
            std::to_string(compared) + " nerve instances (" + std::to_string(from7) + " from criterion 7, " +
                std::to_string(from_line) + " from Z^1 t<=4), " + std::to_string(disagreements) + " disagreements"};
}

Outcome criterion9()
{
    std::size_t pairs = 0;
    std::size_t asserted = 0;
    std::size_t discrepancies = 0;
    for (const auto& space : {FiniteMetricSpace::cycle_graph(6), support::line_space(6)})
        for (Distance s = 0; s < space.diameter(); ++s)
            for (Distance t = s + 1; t <= space.diameter(); ++t) {
                const auto r = filtration_check(space, s, t);
                ++pairs;
                const bool all_certified = r.summary["not_contractible"] == 0 && r.summary["unknown"] == 0;
                if (!all_certified)
                    continue;
                ++asserted;
                const auto bs = trimmed(reduced_betti(rips_complex(space, s, std::nullopt)));
                const auto bt = trimmed(reduced_betti(rips_complex(space, t, std::nullopt)));
                if (bs != bt || !r.passed)
                    ++discrepancies;
            }
    return {discrepancies == 0, std::to_string(pairs) + " scale pairs, " + std::to_string(asserted) +
                                    " with all band links certified, " + std::to_string(discrepancies) +
                                    " discrepancies"};
}

Outcome criterion10()
{
    Outcome out;
    // max_dim = |X|-1 is never a cap; it only satisfies the size guard
    auto expect_contractible = [&](const FiniteMetricSpace& space, const std::string& name, Distance t) {
        const auto report = run_rips_betti(space, t, space.size() - 1).report;
        const auto& verdict = report["summary"]["verdict"];
        const bool ok = verdict["status"] == "ContractibleCertified" && report["summary"]["truncated"] == false;
        out.pass = out.pass && ok;
        out.detail += " " + name + " t=" + std::to_string(t) + ":" + (ok ? "ok" : verdict.dump() + " betti " +
                                                                                     report["summary"]["betti"].dump());
    };
    const auto line = support::line_space(21);
    const auto hexagon = FiniteMetricSpace::cycle_graph(6);
    for (Distance t = 1; t <= 3; ++t)
        expect_contractible(line, "Z1[0,20]", t);
    expect_contractible(hexagon, "C6", 2);
    expect_contractible(hexagon, "C6", 3);
    const auto one = run_rips_betti(hexagon, 1, std::nullopt).report["summary"]["betti"];
    const bool circle = one.size() >= 2 && one[1] == 1;
    out.pass = out.pass && circle;
    out.detail += std::string(" C6 t=1:") + (circle ? "b1=1" : one.dump());
    return out;
}

std::string written(const std::filesystem::path& path, const std::string& text)
{
    {
        std::ofstream f(path, std::ios::binary);
        f << text;
    }
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome criterion11()
{
    const auto dir = std::filesystem::temp_directory_path() / "rips_morse_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<std::pair<std::string, std::function<std::string(std::size_t)>>> campaigns;
    campaigns.emplace_back("verify-covering random", [](std::size_t threads) {
        CampaignConfig c;
        c.n = 2;
        c.t = 6;
        c.mode = CampaignMode::Random;
        c.min_size = 5;
        c.max_size = 10;
        c.samples = 300;
        c.seed = kSeed;
        c.helly = true;
        c.threads = threads;
        return render_json(run_verify_covering(c).report);
    });
    campaigns.emplace_back("verify-links", [](std::size_t threads) {
        CampaignConfig c;
        c.n = 2;
        c.t = 6;
        c.max_size = 3;
        c.threads = threads;
        return render_csv(run_verify_links(c).report);
    });
    campaigns.emplace_back("conjecture-scan", [](std::size_t threads) {
        CampaignConfig c;
        c.n = 1;
        c.max_size = 4;
        c.threads = threads;
        return render_json(run_conjecture_scan(c, 1, 3).report);
    });
    campaigns.emplace_back("filtration-check", [](std::size_t) {
        return render_json(run_filtration_check(FiniteMetricSpace::cycle_graph(6), 1, 3).report);
    });
    std::size_t differing = 0;
    std::string names;
    for (std::size_t i = 0; i < campaigns.size(); ++i) {
        const auto& [name, run] = campaigns[i];
        const auto a = written(dir / ("run_a_" + std::to_string(i)), run(1));
        const auto b = written(dir / ("run_b_" + std::to_string(i)), run(4));
        if (a != b || a.empty()) {
            ++differing;
            names += " " + name;
        }
    }
    std::filesystem::remove_all(dir);
    return {differing == 0, std::to_string(campaigns.size()) + " campaigns run twice (1 and 4 threads), " +
                                std::to_string(differing) + " differ" + names};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        double budget;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {1, kBudget1, criterion1},   {2, kBudget2, criterion2},   {3, kBudget2, criterion3},
        {4, kBudget4, criterion4},   {5, kBudget5, criterion5},   {6, kBudget6, criterion6},
        {7, kBudget7, criterion7},   {8, kBudget8, criterion8},   {9, kBudget9, criterion9},
        {10, kBudget10, criterion10}, {11, 0, criterion11},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.budget == 0 || seconds <= c.budget;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d: %s  [%.2fs%s] %s\n", c.id, pass ? "PASS" : "FAIL", seconds,
                    in_time ? "" : " over budget", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
