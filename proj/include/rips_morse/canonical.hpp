#ifndef RIPS_MORSE_CANONICAL_HPP
#define RIPS_MORSE_CANONICAL_HPP

/**
 * Orbit representatives of finite lattice sets under the l1 isometries that
 * preserve Z^n: translations composed with signed coordinate permutations.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "covering.hpp"
#include "errors.hpp"
#include "metric.hpp"

namespace rips_morse {

/// A signed permutation: output coordinate i is sign[i] * input[perm[i]].
struct SignedPermutation {
    std::vector<std::size_t> perm;
    std::vector<int> sign;

    LatticePoint apply(const LatticePoint& p) const
    {
        std::vector<Coord> out(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i)
            out[i] = sign[i] * p[perm[i]];
        return LatticePoint(std::move(out));
    }
};

/// All 2^n * n! signed permutations of Z^n.
inline std::vector<SignedPermutation> hyperoctahedral_group(std::size_t n)
{
    std::vector<SignedPermutation> out;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
            SignedPermutation g{perm, std::vector<int>(n)};
            for (std::size_t i = 0; i < n; ++i)
                g.sign[i] = (signs >> i & 1U) ? -1 : 1;
            out.push_back(std::move(g));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Sorted points translated so the coordinatewise minimum is the origin.
inline std::vector<LatticePoint> normalize_translation(std::vector<LatticePoint> pts)
{
    const std::size_t n = pts.front().dimension();
    std::vector<Coord> lo(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = pts.front()[i];
        for (const auto& p : pts)
            lo[i] = std::min(lo[i], p[i]);
    }
    for (auto& p : pts) {
        std::vector<Coord> c(p.coords().begin(), p.coords().end());
        for (std::size_t i = 0; i < n; ++i)
            c[i] -= lo[i];
        p = LatticePoint(std::move(c));
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

/**
 * Canonical representative of S: the lexicographically least sorted point
 * list among all signed-permutation images, each translated to have its
 * minimum corner at the origin.
 */
inline LatticeSet canonical_form(const LatticeSet& s, const std::vector<SignedPermutation>& group)
{
    const LatticeSpace space(s[0].dimension());
    std::vector<LatticePoint> best;
    std::vector<LatticePoint> image(s.size());
    for (const auto& g : group) {
        for (std::size_t i = 0; i < s.size(); ++i)
            image[i] = g.apply(s[i]);
        auto normal = normalize_translation(image);
        if (best.empty() || normal < best)
            best = std::move(normal);
    }
    return LatticeSet(space, std::move(best));
}

inline LatticeSet canonical_form(const LatticeSet& s)
{
    return canonical_form(s, hyperoctahedral_group(s[0].dimension()));
}

inline Window default_enumeration_window(std::size_t n, Distance t)
{
    return Window(LatticePoint(std::vector<Coord>(n, 0)), LatticePoint(std::vector<Coord>(n, t)));
}

/**
 * One representative per orbit of sets with diameter exactly t and
 * 2 <= |S| <= max_size whose canonical form lies in the window. Output is
 * in canonical (lexicographic) order.
 */
inline std::vector<LatticeSet> enumerate_canonical_sets(std::size_t n, Distance t, std::size_t max_size,
                                                        const Window& window)
{
    if (max_size < 2)
        throw InputError("enumeration needs max_size >= 2");
    if (t < 1)
        throw InputError("enumeration needs t >= 1");
    if (window.dimension() != n)
        throw InputError("window dimension does not match n");
    const LatticePoint origin(std::vector<Coord>(n, 0));
    if (!window.contains(origin))
        throw InputError("window " + window.str() + " does not contain the origin; canonical sets start there");
    if (l1_distance(window.lo(), window.hi()) < t)
        throw InputError("window " + window.str() + " cannot hold a set of diameter " + std::to_string(t));

    const LatticeSpace space(n);
    const auto group = hyperoctahedral_group(n);
    std::vector<LatticePoint> pts;
    for (auto& p : window.points())
        if (std::all_of(p.coords().begin(), p.coords().end(), [](Coord c) { return c >= 0; }))
            pts.push_back(std::move(p));

    std::vector<LatticeSet> out;
    std::vector<std::size_t> chosen;
    auto visit = [&](auto&& self, std::size_t start) -> void {
        if (chosen.size() >= 2) {
            std::vector<LatticePoint> members;
            for (auto i : chosen)
                members.push_back(pts[i]);
            LatticeSet candidate(space, members);
            if (candidate.diameter() == t && normalize_translation(members) == members &&
                canonical_form(candidate, group) == candidate)
                out.push_back(std::move(candidate));
        }
        if (chosen.size() == max_size)
            return;
        for (std::size_t j = start; j < pts.size(); ++j) {
            bool close = true;
            for (auto i : chosen)
                if (l1_distance(pts[i], pts[j]) > t) {
                    close = false;
                    break;
                }
            if (!close)
                continue;
            chosen.push_back(j);
            self(self, j + 1);
            chosen.pop_back();
        }
    };
    visit(visit, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * Random diameter-t sets inside the window, returned in canonical form.
 * Points are drawn one at a time among window points within t of those
 * already drawn; a draw is rejected unless the final diameter equals t.
 */
inline std::vector<LatticeSet> sample_sets(std::size_t n, Distance t, std::size_t min_size, std::size_t max_size,
                                           const Window& window, std::size_t count, std::uint64_t seed)
{
    if (min_size < 2 || min_size > max_size)
        throw InputError("sampling needs 2 <= min_size <= max_size");
    if (window.dimension() != n)
        throw InputError("window dimension does not match n");
    const LatticeSpace space(n);
    const auto group = hyperoctahedral_group(n);
    const auto pts = window.points();
    std::mt19937_64 rng(seed);
    std::vector<LatticeSet> out;
    out.reserve(count);
    constexpr std::size_t kMaxAttempts = 1'000'000;
    std::vector<std::size_t> options;
    while (out.size() < count) {
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
            const std::size_t k = std::uniform_int_distribution<std::size_t>(min_size, max_size)(rng);
            std::vector<std::size_t> chosen{std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)};
            while (chosen.size() < k) {
                options.clear();
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    if (std::find(chosen.begin(), chosen.end(), j) != chosen.end())
                        continue;
                    if (std::all_of(chosen.begin(), chosen.end(),
                                    [&](std::size_t i) { return l1_distance(pts[i], pts[j]) <= t; }))
                        options.push_back(j);
                }
                if (options.empty())
                    break;
                chosen.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
            }
            if (chosen.size() < k)
                continue;
            std::vector<LatticePoint> members;
            for (auto i : chosen)
                members.push_back(pts[i]);
            LatticeSet candidate(space, std::move(members));
            if (candidate.diameter() != t)
                continue;
            out.push_back(canonical_form(candidate, group));
            accepted = true;
        }
        if (!accepted)
            throw InputError("could not sample a diameter-" + std::to_string(t) + " set of the requested size in " +
                             window.str());
    }
    return out;
}

} // namespace rips_morse

#endif // RIPS_MORSE_CANONICAL_HPP
