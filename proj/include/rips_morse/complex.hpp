#ifndef RIPS_MORSE_COMPLEX_HPP
#define RIPS_MORSE_COMPLEX_HPP

/**
 * Finite abstract simplicial complexes and the constructions needed around
 * Rips complexes: flag complexes, order complexes of posets, joins, cones
 * and the nerve of the coface-link star cover.
 *
 * A complex is stored by its maximal simplices. Every query that is about
 * "the complex" (equality, audits, homology) is about the full downward
 * closed family those maximal simplices generate.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>
#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "metric.hpp"

namespace rips_morse {

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>; // sorted, duplicate-free
using Bitset = boost::dynamic_bitset<>;

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const { return boost::hash_range(s.begin(), s.end()); }
};

inline bool is_subset(std::span<const Vertex> small, std::span<const Vertex> big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

class SimplicialComplex {
public:
    /// The empty complex (no vertices).
    SimplicialComplex() = default;

    /**
     * Complex generated by an arbitrary family of vertex sets. Each vertex
     * label becomes a 0-simplex even if no generator mentions it.
     */
    static SimplicialComplex from_generators(std::vector<std::string> labels, std::vector<Simplex> generators)
    {
        {
            std::set<std::string> seen;
            for (const auto& l : labels)
                if (!seen.insert(l).second)
                    throw InputError("duplicate vertex label '" + l + "'");
        }
        for (auto& g : generators) {
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
            for (Vertex v : g)
                if (v >= labels.size())
                    throw InputError("simplex refers to vertex " + std::to_string(v) + " but only " +
                                     std::to_string(labels.size()) + " labels given");
        }
        std::erase_if(generators, [](const Simplex& g) { return g.empty(); });
        std::vector<bool> covered(labels.size(), false);
        for (const auto& g : generators)
            for (Vertex v : g)
                covered[v] = true;
        for (Vertex v = 0; v < labels.size(); ++v)
            if (!covered[v])
                generators.push_back({v});

        std::sort(generators.begin(), generators.end(), [](const Simplex& a, const Simplex& b) {
            return a.size() != b.size() ? a.size() > b.size() : a < b;
        });
        generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

        std::vector<Bitset> kept_bits;
        std::vector<Simplex> kept;
        for (auto& g : generators) {
            Bitset bits(labels.size());
            for (Vertex v : g)
                bits.set(v);
            bool dominated = false;
            for (std::size_t i = 0; i < kept.size() && kept[i].size() > g.size(); ++i)
                if (bits.is_subset_of(kept_bits[i])) {
                    dominated = true;
                    break;
                }
            if (!dominated) {
                kept_bits.push_back(std::move(bits));
                kept.push_back(std::move(g));
            }
        }
        return from_maximal_unchecked(std::move(labels), std::move(kept));
    }

    /// Caller guarantees `maximal` is an antichain covering every vertex.
    static SimplicialComplex from_maximal_unchecked(std::vector<std::string> labels, std::vector<Simplex> maximal)
    {
        SimplicialComplex k;
        k.labels_ = std::move(labels);
        k.maximal_ = std::move(maximal);
        std::sort(k.maximal_.begin(), k.maximal_.end());
        return k;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Vertex v) const { return labels_.at(v); }
    std::size_t vertex_count() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<Simplex>& maximal_simplices() const { return maximal_; }

    int dimension() const
    {
        int d = -1;
        for (const auto& s : maximal_)
            d = std::max(d, static_cast<int>(s.size()) - 1);
        return d;
    }

    bool contains(std::span<const Vertex> simplex) const
    {
        if (simplex.empty())
            return false;
        return std::any_of(maximal_.begin(), maximal_.end(),
                           [&](const Simplex& m) { return is_subset(simplex, m); });
    }

    /// Full simplex family; entry d holds the d-simplices in lexicographic order.
    std::vector<std::vector<Simplex>> simplices_by_dimension() const
    {
        const int dim = dimension();
        std::vector<std::vector<Simplex>> out(static_cast<std::size_t>(dim + 1));
        for (int d = 0; d <= dim; ++d) {
            std::unordered_set<Simplex, SimplexHash> faces;
            const auto size = static_cast<std::size_t>(d + 1);
            for (const auto& m : maximal_) {
                if (m.size() < size)
                    continue;
                if (m.size() == size) {
                    faces.insert(m);
                    continue;
                }
                // all size-subsets of m
                std::vector<std::size_t> idx(size);
                for (std::size_t i = 0; i < size; ++i)
                    idx[i] = i;
                while (true) {
                    Simplex face(size);
                    for (std::size_t i = 0; i < size; ++i)
                        face[i] = m[idx[i]];
                    faces.insert(std::move(face));
                    std::size_t i = size;
                    while (i > 0 && idx[i - 1] == m.size() - size + (i - 1))
                        --i;
                    if (i == 0)
                        break;
                    ++idx[i - 1];
                    for (std::size_t j = i; j < size; ++j)
                        idx[j] = idx[j - 1] + 1;
                }
            }
            out[static_cast<std::size_t>(d)].assign(faces.begin(), faces.end());
            std::sort(out[static_cast<std::size_t>(d)].begin(), out[static_cast<std::size_t>(d)].end());
        }
        return out;
    }

    std::size_t simplex_count() const
    {
        std::size_t n = 0;
        for (const auto& level : simplices_by_dimension())
            n += level.size();
        return n;
    }

    std::vector<std::string> labels_of(std::span<const Vertex> s) const
    {
        std::vector<std::string> out;
        out.reserve(s.size());
        for (Vertex v : s)
            out.push_back(labels_.at(v));
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Maximal simplices as sorted label lists, in sorted order; a complete
    /// relabeling-invariant description of the complex.
    std::vector<std::vector<std::string>> labeled_maximal_simplices() const
    {
        std::vector<std::vector<std::string>> out;
        out.reserve(maximal_.size());
        for (const auto& m : maximal_)
            out.push_back(labels_of(m));
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Equality of the full simplex families, compared through vertex labels.
    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        auto la = a.labels_;
        auto lb = b.labels_;
        std::sort(la.begin(), la.end());
        std::sort(lb.begin(), lb.end());
        return la == lb && a.labeled_maximal_simplices() == b.labeled_maximal_simplices();
    }

    /**
     * Checks the representation invariants: maximal simplices form an
     * antichain, every vertex is a 0-simplex, and the expanded family is
     * closed under taking nonempty faces. Throws InconsistencyError.
     */
    void audit() const
    {
        std::vector<bool> covered(labels_.size(), false);
        for (const auto& m : maximal_) {
            if (m.empty() || !std::is_sorted(m.begin(), m.end()) ||
                std::adjacent_find(m.begin(), m.end()) != m.end())
                throw InconsistencyError("malformed simplex in complex");
            for (Vertex v : m) {
                if (v >= labels_.size())
                    throw InconsistencyError("simplex vertex out of range");
                covered[v] = true;
            }
        }
        if (std::find(covered.begin(), covered.end(), false) != covered.end())
            throw InconsistencyError("vertex not contained in any simplex");
        for (std::size_t i = 0; i < maximal_.size(); ++i)
            for (std::size_t j = 0; j < maximal_.size(); ++j)
                if (i != j && is_subset(maximal_[i], maximal_[j]))
                    throw InconsistencyError("maximal simplices are not an antichain");
        const auto levels = simplices_by_dimension();
        for (std::size_t d = 1; d < levels.size(); ++d)
            for (const auto& s : levels[d])
                for (std::size_t drop = 0; drop < s.size(); ++drop) {
                    Simplex face = s;
                    face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                    if (!std::binary_search(levels[d - 1].begin(), levels[d - 1].end(), face))
                        throw InconsistencyError("complex is not closed under faces");
                }
    }

private:
    std::vector<std::string> labels_;
    std::vector<Simplex> maximal_;
};

class Graph {
public:
    explicit Graph(std::size_t n) : adj_(n, Bitset(n)) {}

    /// Validates symmetry and absence of loops.
    static Graph from_adjacency(const std::vector<std::vector<bool>>& matrix)
    {
        Graph g(matrix.size());
        for (std::size_t i = 0; i < matrix.size(); ++i) {
            if (matrix[i].size() != matrix.size())
                throw InputError("adjacency matrix is not square");
            if (matrix[i][i])
                throw InputError("graph has a loop at vertex " + std::to_string(i));
            for (std::size_t j = 0; j < matrix.size(); ++j) {
                if (matrix[i][j] != matrix[j][i])
                    throw InputError("adjacency is not symmetric at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
                if (matrix[i][j])
                    g.adj_[i].set(j);
            }
        }
        return g;
    }

    std::size_t size() const { return adj_.size(); }

    void add_edge(Vertex u, Vertex v)
    {
        if (u == v)
            throw InputError("graph loops are not allowed");
        adj_.at(u).set(v);
        adj_.at(v).set(u);
    }

    bool adjacent(Vertex u, Vertex v) const { return adj_.at(u).test(v); }
    const Bitset& neighbors(Vertex v) const { return adj_.at(v); }

private:
    std::vector<Bitset> adj_;
};

namespace detail {

// Bron-Kerbosch with Tomita pivoting.
inline void bron_kerbosch(const Graph& g, Simplex& r, Bitset p, Bitset x, std::vector<Simplex>& out)
{
    if (p.none() && x.none()) {
        Simplex clique = r;
        std::sort(clique.begin(), clique.end());
        out.push_back(std::move(clique));
        return;
    }
    const Bitset px = p | x;
    std::size_t pivot = px.find_first();
    std::size_t best = 0;
    for (auto u = px.find_first(); u != Bitset::npos; u = px.find_next(u)) {
        const auto count = (p & g.neighbors(static_cast<Vertex>(u))).count();
        if (count >= best) {
            best = count;
            pivot = u;
        }
    }
    const Bitset candidates = p - g.neighbors(static_cast<Vertex>(pivot));
    for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
        const auto& nv = g.neighbors(static_cast<Vertex>(v));
        r.push_back(static_cast<Vertex>(v));
        bron_kerbosch(g, r, p & nv, x & nv, out);
        r.pop_back();
        p.reset(v);
        x.set(v);
    }
}

} // namespace detail

/// All maximal cliques, each sorted, in lexicographic order.
inline std::vector<Simplex> maximal_cliques(const Graph& g)
{
    std::vector<Simplex> out;
    if (g.size() == 0)
        return out;
    Simplex r;
    Bitset p(g.size());
    p.set();
    detail::bron_kerbosch(g, r, p, Bitset(g.size()), out);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> index_labels(std::size_t n)
{
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i)
        labels[i] = std::to_string(i);
    return labels;
}

/// Above this many vertices a flag complex needs an explicit dimension cap.
inline constexpr std::size_t kUncappedFlagVertexLimit = 20;

/**
 * Clique complex of `g`, truncated to simplices of dimension <= max_dim
 * when a cap is given. Graphs with more than 20 vertices require a cap.
 */
inline SimplicialComplex flag_complex(const Graph& g, std::vector<std::string> labels,
                                      std::optional<std::size_t> max_dim = std::nullopt)
{
    if (labels.size() != g.size())
        throw InputError("flag complex needs one label per vertex");
    if (!max_dim && g.size() > kUncappedFlagVertexLimit)
        throw SizeGuardError("flag complex on " + std::to_string(g.size()) +
                             " vertices needs an explicit max_dim cap");
    auto cliques = maximal_cliques(g);
    if (!max_dim)
        return SimplicialComplex::from_maximal_unchecked(std::move(labels), std::move(cliques));

    const std::size_t cap = *max_dim + 1;
    if (std::all_of(cliques.begin(), cliques.end(), [&](const Simplex& c) { return c.size() <= cap; }))
        return SimplicialComplex::from_maximal_unchecked(std::move(labels), std::move(cliques));
    std::set<Simplex> generators;
    for (const auto& c : cliques) {
        if (c.size() <= cap) {
            generators.insert(c);
            continue;
        }
        std::vector<bool> pick(c.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(cap), true);
        do {
            Simplex face;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (pick[i])
                    face.push_back(c[i]);
            generators.insert(std::move(face));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return SimplicialComplex::from_generators(std::move(labels), {generators.begin(), generators.end()});
}

inline SimplicialComplex flag_complex(const Graph& g, std::optional<std::size_t> max_dim = std::nullopt)
{
    return flag_complex(g, index_labels(g.size()), max_dim);
}

/// Rips complex on the given points: flag complex of {d(x,y) <= t}.
template <MetricSpace Space>
SimplicialComplex rips_complex(const Space& space, std::span<const typename Space::point_type> points, Distance t,
                               std::optional<std::size_t> max_dim = std::nullopt)
{
    Graph g(points.size());
    std::vector<std::string> labels;
    labels.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        labels.push_back(space.label(points[i]));
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (space.distance(points[i], points[j]) <= t)
                g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
    return flag_complex(g, std::move(labels), max_dim);
}

inline SimplicialComplex rips_complex(const FiniteMetricSpace& space, Distance t,
                                      std::optional<std::size_t> max_dim = std::nullopt)
{
    const auto pts = space.points();
    return rips_complex(space, std::span<const PointIndex>(pts), t, max_dim);
}

/// Finite strict partial order; `above(i)` holds every j with i < j.
class FinitePoset {
public:
    FinitePoset() = default;

    FinitePoset(std::vector<std::string> labels, std::vector<Bitset> above)
        : labels_(std::move(labels)), above_(std::move(above))
    {
        const std::size_t n = labels_.size();
        if (above_.size() != n)
            throw InputError("poset relation needs one row per element");
        for (std::size_t i = 0; i < n; ++i) {
            if (above_[i].size() != n)
                throw InputError("poset relation row has wrong width");
            if (above_[i].test(i))
                throw InputError("poset relation is not irreflexive at " + labels_[i]);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (auto j = above_[i].find_first(); j != Bitset::npos; j = above_[i].find_next(j)) {
                if (above_[j].test(i))
                    throw InputError("poset relation is not antisymmetric: " + labels_[i] + ", " + labels_[j]);
                if (!above_[j].is_subset_of(above_[i]))
                    throw InputError("poset relation is not transitive through " + labels_[j]);
            }
    }

    template <class Less>
    static FinitePoset from_relation(std::vector<std::string> labels, Less less)
    {
        const std::size_t n = labels.size();
        std::vector<Bitset> above(n, Bitset(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (less(i, j))
                    above[i].set(j);
        return FinitePoset(std::move(labels), std::move(above));
    }

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    bool less(std::size_t i, std::size_t j) const { return above_.at(i).test(j); }
    const Bitset& above(std::size_t i) const { return above_.at(i); }

private:
    std::vector<std::string> labels_;
    std::vector<Bitset> above_;
};

/// Simplices are the nonempty chains; stored by maximal chains.
inline SimplicialComplex order_complex(const FinitePoset& poset)
{
    const std::size_t n = poset.size();
    std::vector<Bitset> covers(n);
    Bitset has_lower(n);
    for (std::size_t i = 0; i < n; ++i) {
        covers[i] = poset.above(i);
        for (auto k = poset.above(i).find_first(); k != Bitset::npos; k = poset.above(i).find_next(k)) {
            covers[i] -= poset.above(k);
            has_lower.set(k);
        }
    }
    std::vector<Simplex> chains;
    Simplex path;
    auto walk = [&](auto&& self, std::size_t v) -> void {
        path.push_back(static_cast<Vertex>(v));
        if (covers[v].none()) {
            Simplex chain = path;
            std::sort(chain.begin(), chain.end());
            chains.push_back(std::move(chain));
        } else {
            for (auto w = covers[v].find_first(); w != Bitset::npos; w = covers[v].find_next(w))
                self(self, w);
        }
        path.pop_back();
    };
    for (std::size_t v = 0; v < n; ++v)
        if (!has_lower.test(v))
            walk(walk, v);
    return SimplicialComplex::from_maximal_unchecked(poset.labels(), std::move(chains));
}

/// Join; vertex labels of the two factors must be disjoint.
inline SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l)
{
    {
        std::set<std::string> left(k.labels().begin(), k.labels().end());
        for (const auto& label : l.labels())
            if (left.count(label))
                throw InputError("join factors share vertex label '" + label + "'");
    }
    if (k.empty())
        return l;
    if (l.empty())
        return k;
    std::vector<std::string> labels = k.labels();
    labels.insert(labels.end(), l.labels().begin(), l.labels().end());
    const auto offset = static_cast<Vertex>(k.vertex_count());
    std::vector<Simplex> maximal;
    maximal.reserve(k.maximal_simplices().size() * l.maximal_simplices().size());
    for (const auto& sigma : k.maximal_simplices())
        for (const auto& tau : l.maximal_simplices()) {
            Simplex s = sigma;
            for (Vertex v : tau)
                s.push_back(v + offset);
            maximal.push_back(std::move(s));
        }
    return SimplicialComplex::from_maximal_unchecked(std::move(labels), std::move(maximal));
}

/**
 * Some vertex v with sigma + {v} in K for every simplex sigma of K (the
 * smallest such vertex index), or nothing. On the maximal-face
 * representation this is exactly "v lies in every maximal simplex".
 */
inline std::optional<Vertex> is_cone(const SimplicialComplex& k)
{
    if (k.empty())
        return std::nullopt;
    Bitset common(k.vertex_count());
    common.set();
    for (const auto& m : k.maximal_simplices()) {
        Bitset bits(k.vertex_count());
        for (Vertex v : m)
            bits.set(v);
        common &= bits;
        if (common.none())
            return std::nullopt;
    }
    return static_cast<Vertex>(common.find_first());
}

/**
 * Nerve of the cover of the descending coface link of S by the stars Z_y,
 * y in Y. Two or more stars meet iff the centers have diameter <= t, so
 * the nerve is the flag complex of {d(y, y') <= t} on Y.
 */
template <MetricSpace Space>
SimplicialComplex nerve_of_coface_cover(const VertexSetOf<Space>& s, std::span<const typename Space::point_type> centers,
                                        Distance t, const Space& space)
{
    (void)s;
    if (centers.empty())
        throw InputError("nerve of an empty center set");
    return rips_complex(space, centers, t, centers.size() - 1);
}

inline Json to_json(const SimplicialComplex& k)
{
    Json out;
    out["vertices"] = k.labels();
    auto maximal = Json::array();
    for (const auto& m : k.maximal_simplices()) {
        auto simplex = Json::array();
        for (Vertex v : m)
            simplex.push_back(k.label(v));
        maximal.push_back(std::move(simplex));
    }
    out["maximal_simplices"] = std::move(maximal);
    return out;
}

inline SimplicialComplex complex_from_json(const Json& doc)
{
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("maximal_simplices"))
        throw InputError("complex JSON needs 'vertices' and 'maximal_simplices'");
    std::vector<std::string> labels;
    std::map<std::string, Vertex> index;
    for (const auto& v : doc["vertices"]) {
        auto label = v.is_string() ? v.get<std::string>() : v.dump();
        index.emplace(label, static_cast<Vertex>(labels.size()));
        labels.push_back(std::move(label));
    }
    std::vector<Simplex> generators;
    for (const auto& s : doc["maximal_simplices"]) {
        Simplex simplex;
        for (const auto& v : s) {
            const auto label = v.is_string() ? v.get<std::string>() : v.dump();
            const auto it = index.find(label);
            if (it == index.end())
                throw InputError("simplex uses undeclared vertex '" + label + "'");
            simplex.push_back(it->second);
        }
        generators.push_back(std::move(simplex));
    }
    return SimplicialComplex::from_generators(std::move(labels), std::move(generators));
}

} // namespace rips_morse

#endif // RIPS_MORSE_COMPLEX_HPP
