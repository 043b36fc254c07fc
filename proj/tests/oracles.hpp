#ifndef RIPS_MORSE_TESTS_ORACLES_HPP
#define RIPS_MORSE_TESTS_ORACLES_HPP

// Brute-force reference implementations. None of these call into the
// library's homology, LP, clique or link code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Mask = std::uint32_t;

/// Every nonempty face of the given simplices, as vertex bitmasks.
inline std::set<Mask> downward_closure(const std::vector<Mask>& generators)
{
    std::set<Mask> out;
    for (Mask g : generators)
        for (Mask sub = g; sub != 0; sub = (sub - 1) & g)
            out.insert(sub);
    return out;
}

/// GF(2) rank by elimination on rows stored as std::vector<bool>.
inline std::size_t gf2_rank(std::vector<std::vector<bool>> rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot][c])
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r][c])
                for (std::size_t j = 0; j < cols; ++j)
                    rows[r][j] = rows[r][j] != rows[rank][j];
        ++rank;
    }
    return rank;
}

/// Reduced Betti numbers over GF(2) of the complex generated by `generators`.
inline std::vector<std::size_t> reduced_betti(const std::vector<Mask>& generators)
{
    const auto simplices = downward_closure(generators);
    int top = -1;
    for (Mask s : simplices)
        top = std::max(top, std::popcount(s) - 1);
    std::vector<std::vector<Mask>> by_dim(static_cast<std::size_t>(top + 1));
    for (Mask s : simplices)
        by_dim[static_cast<std::size_t>(std::popcount(s) - 1)].push_back(s);
    // rank of boundary from dimension k to k-1; k = 0 is the augmentation
    std::vector<std::size_t> rank(static_cast<std::size_t>(top + 2), 0);
    for (int k = 0; k <= top; ++k) {
        const auto& cols = by_dim[static_cast<std::size_t>(k)];
        if (k == 0) {
            rank[0] = cols.empty() ? 0 : 1;
            continue;
        }
        const auto& rows_idx = by_dim[static_cast<std::size_t>(k - 1)];
        std::vector<std::vector<bool>> rows(rows_idx.size(), std::vector<bool>(cols.size()));
        for (std::size_t i = 0; i < rows_idx.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                rows[i][j] = (rows_idx[i] & cols[j]) == rows_idx[i];
        rank[static_cast<std::size_t>(k)] = gf2_rank(std::move(rows));
    }
    std::vector<std::size_t> betti;
    for (int k = 0; k <= top; ++k) {
        const std::size_t count = by_dim[static_cast<std::size_t>(k)].size();
        betti.push_back(count - rank[static_cast<std::size_t>(k)] - rank[static_cast<std::size_t>(k + 1)]);
    }
    return betti;
}

/// Clique complex by testing every vertex subset (n <= 20).
inline std::vector<Mask> clique_complex(const std::vector<std::vector<bool>>& adjacent)
{
    const std::size_t n = adjacent.size();
    std::vector<Mask> out;
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        bool clique = true;
        for (std::size_t i = 0; i < n && clique; ++i)
            for (std::size_t j = i + 1; j < n && clique; ++j)
                if ((s >> i & 1U) && (s >> j & 1U) && !adjacent[i][j])
                    clique = false;
        if (clique)
            out.push_back(s);
    }
    return out;
}

/// Maximal elements of a family of masks under inclusion.
inline std::vector<Mask> maximal(const std::vector<Mask>& family)
{
    std::vector<Mask> out;
    for (Mask a : family) {
        bool dominated = false;
        for (Mask b : family)
            if (a != b && (a & b) == a)
                dominated = true;
        if (!dominated)
            out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct Frac {
    long long num;
    long long den; // > 0
    friend bool operator<(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }
    friend bool operator==(Frac a, Frac b) { return a.num * b.den == b.num * a.den; }
};

using Matrix = std::vector<std::vector<long long>>;

inline long long diameter(const Matrix& d, Mask s)
{
    long long out = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            if ((s >> i & 1U) && (s >> j & 1U))
                out = std::max(out, d[i][j]);
    return out;
}

/// h(S) = diam - (|S|-1)/m on an m-point space.
inline Frac morse_h(const Matrix& d, Mask s)
{
    const long long m = static_cast<long long>(d.size());
    return Frac{diameter(d, s) * m - (std::popcount(s) - 1), m};
}

inline std::string label(Mask s)
{
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < 32; ++i)
        if (s >> i & 1U) {
            out += (first ? "" : ",") + std::to_string(i);
            first = false;
        }
    return out + "}";
}

/**
 * Descending link of S in the subdivided full simplex on the space,
 * straight from the definition: vertices are sets R != S comparable with S
 * under inclusion with h(R) < h(S); simplices are chains. Returned as
 * maximal chains of labels, each sorted.
 */
inline std::set<std::vector<std::string>> descending_link(const Matrix& d, Mask s)
{
    const std::size_t m = d.size();
    const Frac hs = morse_h(d, s);
    std::vector<Mask> verts;
    for (Mask r = 1; r < (Mask{1} << m); ++r) {
        if (r == s)
            continue;
        const bool comparable = (r & s) == r || (r & s) == s;
        if (comparable && morse_h(d, r) < hs)
            verts.push_back(r);
    }
    // maximal chains by DFS over the inclusion order
    std::set<std::vector<std::string>> out;
    std::vector<Mask> chain;
    auto extendable = [&](const std::vector<Mask>& c) {
        for (Mask v : verts) {
            if (std::find(c.begin(), c.end(), v) != c.end())
                continue;
            bool ok = true;
            for (Mask w : c)
                if ((v & w) != v && (v & w) != w)
                    ok = false;
            if (ok)
                return true;
        }
        return false;
    };
    auto dfs = [&](auto&& self, std::size_t start) -> void {
        if (!chain.empty() && !extendable(chain)) {
            std::vector<std::string> labels;
            for (Mask c : chain)
                labels.push_back(label(c));
            std::sort(labels.begin(), labels.end());
            out.insert(labels);
        }
        for (std::size_t i = start; i < verts.size(); ++i) {
            bool ok = true;
            for (Mask w : chain)
                if ((verts[i] & w) != verts[i] && (verts[i] & w) != w)
                    ok = false;
            if (!ok)
                continue;
            chain.push_back(verts[i]);
            self(self, i + 1);
            chain.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

/// Points of a lattice set as integer tuples.
using IntPoint = std::vector<long long>;

inline long long l1(const IntPoint& a, const IntPoint& b)
{
    long long out = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        out += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    return out;
}

/**
 * min over x in (1/den)Z^n inside the bounding box of max_s |x - s|_1,
 * returned as a fraction over den.
 */
inline Frac chebyshev_grid(const std::vector<IntPoint>& s, long long den)
{
    const std::size_t n = s.front().size();
    IntPoint lo(n, std::numeric_limits<long long>::max());
    IntPoint hi(n, std::numeric_limits<long long>::min());
    for (const auto& p : s)
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], p[i] * den);
            hi[i] = std::max(hi[i], p[i] * den);
        }
    long long best = std::numeric_limits<long long>::max();
    IntPoint x = lo;
    while (true) {
        long long worst = 0;
        for (const auto& p : s) {
            IntPoint scaled(n);
            for (std::size_t i = 0; i < n; ++i)
                scaled[i] = p[i] * den;
            worst = std::max(worst, l1(x, scaled));
        }
        best = std::min(best, worst);
        std::size_t i = 0;
        while (i < n && x[i] == hi[i]) {
            x[i] = lo[i];
            ++i;
        }
        if (i == n)
            break;
        ++x[i];
    }
    return Frac{best, den};
}

/// Lattice center minimizing max distance, lexicographically least, over a wide box.
inline std::pair<IntPoint, long long> min_lattice_ball(const std::vector<IntPoint>& s)
{
    const std::size_t n = s.front().size();
    long long diam = 0;
    for (const auto& a : s)
        for (const auto& b : s)
            diam = std::max(diam, l1(a, b));
    IntPoint lo(n, std::numeric_limits<long long>::max());
    IntPoint hi(n, std::numeric_limits<long long>::min());
    for (const auto& p : s)
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], p[i] - diam - 1);
            hi[i] = std::max(hi[i], p[i] + diam + 1);
        }
    std::pair<IntPoint, long long> best{{}, std::numeric_limits<long long>::max()};
    IntPoint x = lo;
    while (true) {
        long long worst = 0;
        for (const auto& p : s)
            worst = std::max(worst, l1(x, p));
        if (worst < best.second || (worst == best.second && x < best.first))
            best = {x, worst};
        std::size_t i = n;
        // iterate in lexicographic order: last coordinate fastest
        while (i > 0 && x[i - 1] == hi[i - 1]) {
            x[i - 1] = lo[i - 1];
            --i;
        }
        if (i == 0)
            break;
        ++x[i - 1];
    }
    return best;
}

} // namespace oracle

#endif // RIPS_MORSE_TESTS_ORACLES_HPP
