#ifndef RIPS_MORSE_TESTS_SUPPORT_HPP
#define RIPS_MORSE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include <rips_morse/rips_morse.hpp>

#include "oracles.hpp"

namespace support {

using namespace rips_morse;

inline LatticePoint pt(std::initializer_list<Coord> c)
{
    return LatticePoint(std::vector<Coord>(c));
}

inline LatticeSet lattice_set(std::initializer_list<std::initializer_list<Coord>> pts)
{
    std::vector<LatticePoint> out;
    for (const auto& p : pts)
        out.push_back(pt(p));
    const LatticeSpace space(out.front().dimension());
    return LatticeSet(space, std::move(out));
}

inline LatticeSet line_set(std::initializer_list<Coord> xs)
{
    std::vector<LatticePoint> out;
    for (Coord x : xs)
        out.push_back(pt({x}));
    return LatticeSet(LatticeSpace(1), std::move(out));
}

inline VertexSet<PointIndex> index_set(const FiniteMetricSpace& space, std::initializer_list<std::size_t> idx)
{
    std::vector<PointIndex> out;
    for (auto i : idx)
        out.push_back(PointIndex{i});
    return VertexSet<PointIndex>(space, std::move(out));
}

/// Complex on labels "0".."n-1" generated by the listed simplices.
inline SimplicialComplex complex_of(std::size_t n, std::vector<Simplex> gens)
{
    return SimplicialComplex::from_generators(index_labels(n), std::move(gens));
}

inline SimplicialComplex full_simplex(std::size_t n)
{
    Simplex all(n);
    for (std::size_t i = 0; i < n; ++i)
        all[i] = static_cast<Vertex>(i);
    return complex_of(n, {all});
}

inline SimplicialComplex cycle_complex(std::size_t n)
{
    std::vector<Simplex> edges;
    for (std::size_t i = 0; i < n; ++i) {
        Simplex e{static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)};
        std::sort(e.begin(), e.end());
        edges.push_back(e);
    }
    return complex_of(n, edges);
}

/// Maximal simplices as bitmasks over vertex indices (for the oracles).
inline std::vector<oracle::Mask> masks(const SimplicialComplex& k)
{
    std::vector<oracle::Mask> out;
    for (const auto& s : k.maximal_simplices()) {
        oracle::Mask m = 0;
        for (Vertex v : s)
            m |= oracle::Mask{1} << v;
        out.push_back(m);
    }
    return out;
}

/// Maximal simplices as sorted label lists.
inline std::set<std::vector<std::string>> labeled(const SimplicialComplex& k)
{
    std::set<std::vector<std::string>> out;
    for (const auto& s : k.maximal_simplices()) {
        std::vector<std::string> labels;
        for (Vertex v : s)
            labels.push_back(k.label(v));
        std::sort(labels.begin(), labels.end());
        out.insert(labels);
    }
    return out;
}

inline BettiVector trimmed_oracle_betti(const SimplicialComplex& k)
{
    auto b = oracle::reduced_betti(masks(k));
    while (!b.empty() && b.back() == 0)
        b.pop_back();
    return b;
}

inline oracle::Matrix matrix_of(const FiniteMetricSpace& space)
{
    oracle::Matrix out(space.size(), std::vector<long long>(space.size()));
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
            out[i][j] = space.distance(PointIndex{i}, PointIndex{j});
    return out;
}

inline std::vector<oracle::IntPoint> int_points(const LatticeSet& s)
{
    std::vector<oracle::IntPoint> out;
    for (const auto& p : s.points())
        out.emplace_back(p.coords().begin(), p.coords().end());
    return out;
}

/// Random flag complex on n vertices with edge probability p.
inline SimplicialComplex random_flag(std::size_t n, double p, std::mt19937_64& rng)
{
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng))
                g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return flag_complex(g, index_labels(n));
}

/// Random point set in [lo, hi]^n of the given size.
inline LatticeSet random_lattice_set(std::size_t n, std::size_t size, Coord lo, Coord hi, std::mt19937_64& rng)
{
    std::uniform_int_distribution<Coord> coord(lo, hi);
    std::vector<LatticePoint> pts;
    for (std::size_t i = 0; i < size; ++i) {
        std::vector<Coord> c(n);
        for (auto& x : c)
            x = coord(rng);
        pts.emplace_back(std::move(c));
    }
    return LatticeSet(LatticeSpace(n), std::move(pts));
}

/// Random integer metric: shortest paths of a random weighted complete graph.
inline FiniteMetricSpace random_metric(std::size_t m, long long max_weight, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long long> w(1, max_weight);
    std::vector<std::vector<Distance>> d(m, std::vector<Distance>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            d[i][j] = d[j][i] = w(rng);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return FiniteMetricSpace(d);
}

inline FiniteMetricSpace line_space(std::size_t points)
{
    std::vector<LatticePoint> pts;
    for (std::size_t i = 0; i < points; ++i)
        pts.push_back(pt({static_cast<Coord>(i)}));
    return FiniteMetricSpace::from_lattice_points(pts);
}

} // namespace support

#endif // RIPS_MORSE_TESTS_SUPPORT_HPP
