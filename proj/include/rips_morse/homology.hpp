#ifndef RIPS_MORSE_HOMOLOGY_HPP
#define RIPS_MORSE_HOMOLOGY_HPP

/**
 * Reduced simplicial homology with coefficients in the two-element field,
 * greedy elementary collapses, and a three-valued contractibility verdict.
 *
 * A nonzero reduced Betti number is a sound proof of non-contractibility;
 * a cone apex or a complete collapse sequence is a sound proof of
 * contractibility. Anything else is reported as Unknown.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"

namespace rips_morse {

/// Dense bit-packed matrix over GF(2), row-major.
class Gf2Matrix {
public:
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U; }
    void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
    void flip(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

    /// Forward Gaussian elimination on a copy.
    std::size_t rank() const
    {
        std::vector<std::uint64_t> m = bits_;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
            const std::size_t w = c / 64;
            const std::uint64_t mask = std::uint64_t{1} << (c % 64);
            std::size_t pivot = rank;
            while (pivot < rows_ && !(m[pivot * words_ + w] & mask))
                ++pivot;
            if (pivot == rows_)
                continue;
            if (pivot != rank)
                std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(pivot * words_ + w),
                                 m.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * words_),
                                 m.begin() + static_cast<std::ptrdiff_t>(rank * words_ + w));
            // rows below `rank` are zero in every column before c
            const std::uint64_t* prow = m.data() + rank * words_;
            for (std::size_t r = rank + 1; r < rows_; ++r) {
                std::uint64_t* row = m.data() + r * words_;
                if (row[w] & mask)
                    for (std::size_t k = w; k < words_; ++k)
                        row[k] ^= prow[k];
            }
            ++rank;
        }
        return rank;
    }

    /// Boolean matrix product (this * other).
    Gf2Matrix multiply(const Gf2Matrix& other) const
    {
        if (cols_ != other.rows_)
            throw InputError("GF(2) matrix product with incompatible shapes");
        Gf2Matrix out(rows_, other.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k)
                if (get(r, k))
                    for (std::size_t w = 0; w < out.words_; ++w)
                        out.bits_[r * out.words_ + w] ^= other.bits_[k * other.words_ + w];
        return out;
    }

    bool is_zero() const
    {
        return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

/// Column guard for dense boundary matrices.
inline constexpr std::size_t kMaxBoundaryColumns = std::size_t{1} << 15;

namespace detail {

inline Gf2Matrix boundary_from_levels(const std::vector<std::vector<Simplex>>& levels, std::size_t k)
{
    const auto& cols = levels[k];
    if (cols.size() > kMaxBoundaryColumns)
        throw SizeGuardError("boundary matrix in dimension " + std::to_string(k) + " has " +
                             std::to_string(cols.size()) + " columns (limit " +
                             std::to_string(kMaxBoundaryColumns) + ")");
    if (k == 0) {
        Gf2Matrix aug(1, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            aug.set(0, c);
        return aug;
    }
    const auto& rows = levels[k - 1];
    Gf2Matrix m(rows.size(), cols.size());
    Simplex face;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t drop = 0; drop < cols[c].size(); ++drop) {
            face = cols[c];
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            const auto it = std::lower_bound(rows.begin(), rows.end(), face);
            if (it == rows.end() || *it != face)
                throw InconsistencyError("face missing from complex during boundary construction");
            m.set(static_cast<std::size_t>(it - rows.begin()), c);
        }
    }
    return m;
}

} // namespace detail

/**
 * Matrix of the boundary map C_k -> C_{k-1} over GF(2). Rows follow the
 * lexicographic order of the (k-1)-simplices, columns that of the
 * k-simplices; for k = 0 the single row is the augmentation.
 */
inline Gf2Matrix boundary_matrix(const SimplicialComplex& k_complex, int k)
{
    if (k < 0 || k > k_complex.dimension())
        throw InputError("boundary dimension " + std::to_string(k) + " out of range for a complex of dimension " +
                         std::to_string(k_complex.dimension()));
    return detail::boundary_from_levels(k_complex.simplices_by_dimension(), static_cast<std::size_t>(k));
}

/// Reduced Betti numbers, entry k = dimension k, length dim + 1.
using BettiVector = std::vector<std::size_t>;

inline BettiVector reduced_betti(const SimplicialComplex& complex)
{
    if (complex.empty())
        throw InputError("reduced homology of the empty complex is not defined here");
    const auto levels = complex.simplices_by_dimension();
    const std::size_t top = levels.size();
    std::vector<std::size_t> ranks(top + 1, 0); // ranks[k] = rank of boundary from dim k
    for (std::size_t k = 0; k < top; ++k)
        ranks[k] = detail::boundary_from_levels(levels, k).rank();
    BettiVector betti(top);
    for (std::size_t k = 0; k < top; ++k)
        betti[k] = levels[k].size() - ranks[k] - ranks[k + 1];
    return betti;
}

inline bool is_acyclic(const BettiVector& betti)
{
    return std::all_of(betti.begin(), betti.end(), [](std::size_t b) { return b == 0; });
}

/// Betti vector with trailing zeros removed, for comparisons across complexes.
inline BettiVector trimmed(BettiVector betti)
{
    while (!betti.empty() && betti.back() == 0)
        betti.pop_back();
    return betti;
}

struct CollapseStep {
    Simplex free_face;
    Simplex coface;
};

struct CollapseResult {
    bool collapsed = false;
    std::vector<CollapseStep> steps;
    std::size_t remaining = 0; // simplices left when stuck
};

/**
 * Greedy elementary collapses: repeatedly removes the free pair whose free
 * face has the largest dimension, lexicographically least face first.
 */
inline CollapseResult collapse_to_point(const SimplicialComplex& complex)
{
    if (complex.empty())
        throw InputError("collapse of the empty complex");
    const auto levels = complex.simplices_by_dimension();
    const std::size_t top = levels.size();
    std::vector<std::size_t> offset(top + 1, 0);
    for (std::size_t d = 0; d < top; ++d)
        offset[d + 1] = offset[d] + levels[d].size();
    const std::size_t total = offset[top];

    std::vector<std::vector<std::uint32_t>> faces(total);
    std::vector<std::vector<std::uint32_t>> cofaces(total);
    Simplex face;
    for (std::size_t d = 1; d < top; ++d)
        for (std::size_t i = 0; i < levels[d].size(); ++i) {
            const auto id = static_cast<std::uint32_t>(offset[d] + i);
            for (std::size_t drop = 0; drop < levels[d][i].size(); ++drop) {
                face = levels[d][i];
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                const auto it = std::lower_bound(levels[d - 1].begin(), levels[d - 1].end(), face);
                const auto fid = static_cast<std::uint32_t>(offset[d - 1] + (it - levels[d - 1].begin()));
                faces[id].push_back(fid);
                cofaces[fid].push_back(id);
            }
        }

    std::vector<std::size_t> live_cofaces(total);
    std::vector<bool> alive(total, true);
    std::vector<std::set<std::uint32_t>> free_faces(top); // by dimension, ids ordered lexicographically
    auto dim_of = [&](std::uint32_t id) {
        return static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), id) - offset.begin()) - 1;
    };
    for (std::uint32_t id = 0; id < total; ++id) {
        live_cofaces[id] = cofaces[id].size();
        if (live_cofaces[id] == 1)
            free_faces[dim_of(id)].insert(id);
    }
    auto lose_coface = [&](std::uint32_t id) {
        if (!alive[id])
            return;
        const std::size_t d = dim_of(id);
        --live_cofaces[id];
        if (live_cofaces[id] == 1)
            free_faces[d].insert(id);
        else
            free_faces[d].erase(id);
    };

    CollapseResult result;
    std::size_t alive_count = total;
    while (true) {
        std::size_t d = top;
        while (d > 0 && free_faces[d - 1].empty())
            --d;
        if (d == 0)
            break;
        const std::uint32_t tau = *free_faces[d - 1].begin();
        std::uint32_t sigma = 0;
        for (auto c : cofaces[tau])
            if (alive[c]) {
                sigma = c;
                break;
            }
        free_faces[d - 1].erase(tau);
        free_faces[d].erase(sigma);
        alive[tau] = false;
        alive[sigma] = false;
        alive_count -= 2;
        result.steps.push_back({levels[d - 1][tau - offset[d - 1]], levels[d][sigma - offset[d]]});
        for (auto f : faces[sigma])
            lose_coface(f);
        for (auto f : faces[tau])
            lose_coface(f);
    }
    result.remaining = alive_count;
    result.collapsed = alive_count == 1;
    return result;
}

enum class ContractibilityStatus { ContractibleCertified, NotContractible, Unknown };

inline std::string to_string(ContractibilityStatus s)
{
    switch (s) {
    case ContractibilityStatus::ContractibleCertified:
        return "ContractibleCertified";
    case ContractibilityStatus::NotContractible:
        return "NotContractible";
    case ContractibilityStatus::Unknown:
        break;
    }
    return "Unknown";
}

struct ConeWitness {
    std::string apex;
};
struct CollapseWitness {
    std::size_t steps = 0;
};
/// index -1 stands for the empty complex (the (-1)-sphere).
struct BettiWitness {
    int index = 0;
    std::size_t value = 0;
};
/// Closure-operator certificate S' -> S' + {y} on a descending face link.
struct ClosureWitness {
    std::string center;
    std::size_t checked_subsets = 0;
};
/// Cone apex of the nerve Rips_t(Y) of the star cover.
struct NerveWitness {
    std::string apex;
    std::size_t centers = 0;
};
/// Joined verdict derived from the verdicts of the two join factors.
struct JoinWitness {
    std::string from;
};
struct NoWitness {
    std::string reason;
};

using Witness =
    std::variant<NoWitness, ConeWitness, CollapseWitness, BettiWitness, ClosureWitness, NerveWitness, JoinWitness>;

/**
 * Status plus the evidence for it. Certified verdicts carry an apex or a
 * collapse/closure/nerve certificate, NotContractible a nonzero Betti
 * index; the factory functions are the only way to build one.
 */
class ContractibilityVerdict {
public:
    static ContractibilityVerdict cone(std::string apex)
    {
        return {ContractibilityStatus::ContractibleCertified, ConeWitness{std::move(apex)}};
    }
    static ContractibilityVerdict collapse(std::size_t steps)
    {
        return {ContractibilityStatus::ContractibleCertified, CollapseWitness{steps}};
    }
    static ContractibilityVerdict closure(std::string center, std::size_t checked)
    {
        return {ContractibilityStatus::ContractibleCertified, ClosureWitness{std::move(center), checked}};
    }
    static ContractibilityVerdict nerve(std::string apex, std::size_t centers)
    {
        return {ContractibilityStatus::ContractibleCertified, NerveWitness{std::move(apex), centers}};
    }
    static ContractibilityVerdict join_certified(std::string from)
    {
        return {ContractibilityStatus::ContractibleCertified, JoinWitness{std::move(from)}};
    }
    static ContractibilityVerdict homology(int index, std::size_t value)
    {
        if (value == 0)
            throw InconsistencyError("non-contractibility needs a nonzero Betti number");
        return {ContractibilityStatus::NotContractible, BettiWitness{index, value}};
    }
    static ContractibilityVerdict unknown(std::string reason)
    {
        return {ContractibilityStatus::Unknown, NoWitness{std::move(reason)}};
    }

    ContractibilityStatus status() const { return status_; }
    const Witness& witness() const { return witness_; }
    bool certified() const { return status_ == ContractibilityStatus::ContractibleCertified; }
    bool refuted() const { return status_ == ContractibilityStatus::NotContractible; }

private:
    ContractibilityVerdict(ContractibilityStatus status, Witness witness)
        : status_(status), witness_(std::move(witness))
    {
    }

    ContractibilityStatus status_;
    Witness witness_;
};

/// Cone apex first, then homology, then greedy collapse.
inline ContractibilityVerdict contractibility_verdict(const SimplicialComplex& complex)
{
    if (complex.empty())
        return ContractibilityVerdict::homology(-1, 1);
    if (const auto apex = is_cone(complex))
        return ContractibilityVerdict::cone(complex.label(*apex));
    const auto betti = reduced_betti(complex);
    for (std::size_t k = 0; k < betti.size(); ++k)
        if (betti[k] != 0)
            return ContractibilityVerdict::homology(static_cast<int>(k), betti[k]);
    const auto collapse = collapse_to_point(complex);
    if (collapse.collapsed)
        return ContractibilityVerdict::collapse(collapse.steps.size());
    return ContractibilityVerdict::unknown("acyclic but greedy collapse stuck with " +
                                           std::to_string(collapse.remaining) + " simplices");
}

inline Json to_json(const Witness& w)
{
    Json out;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, NoWitness>) {
                out["kind"] = "none";
                out["reason"] = x.reason;
            } else if constexpr (std::is_same_v<T, ConeWitness>) {
                out["kind"] = "cone";
                out["apex"] = x.apex;
            } else if constexpr (std::is_same_v<T, CollapseWitness>) {
                out["kind"] = "collapse";
                out["steps"] = x.steps;
            } else if constexpr (std::is_same_v<T, BettiWitness>) {
                out["kind"] = "betti";
                out["index"] = x.index;
                out["value"] = x.value;
            } else if constexpr (std::is_same_v<T, ClosureWitness>) {
                out["kind"] = "closure-operator";
                out["center"] = x.center;
                out["checked_subsets"] = x.checked_subsets;
            } else if constexpr (std::is_same_v<T, NerveWitness>) {
                out["kind"] = "nerve-cone";
                out["apex"] = x.apex;
                out["centers"] = x.centers;
            } else {
                out["kind"] = "join";
                out["from"] = x.from;
            }
        },
        w);
    return out;
}

inline Json to_json(const ContractibilityVerdict& v)
{
    Json out;
    out["status"] = to_string(v.status());
    out["witness"] = to_json(v.witness());
    return out;
}

} // namespace rips_morse

#endif // RIPS_MORSE_HOMOLOGY_HPP
