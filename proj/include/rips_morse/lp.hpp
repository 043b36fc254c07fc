#ifndef RIPS_MORSE_LP_HPP
#define RIPS_MORSE_LP_HPP

/**
 * Two-phase primal simplex method over exact rationals with Bland's
 * anti-cycling rule. Small dense tableaus only; pivots skip zero entries.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace rips_morse {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
    std::vector<Rational> coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs = 0;
};

/// Missing lower bound means the variable is unbounded below.
struct VariableBound {
    std::optional<Rational> lower = Rational(0);
    std::optional<Rational> upper;
};

/// minimize objective . x subject to constraints and bounds.
struct LinearProgram {
    std::vector<Rational> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<VariableBound> bounds; // one per variable; empty means all x >= 0

    std::size_t variable_count() const { return objective.size(); }

    void validate() const
    {
        if (!bounds.empty() && bounds.size() != objective.size())
            throw InputError("linear program has " + std::to_string(bounds.size()) + " bounds for " +
                             std::to_string(objective.size()) + " variables");
        for (std::size_t i = 0; i < constraints.size(); ++i)
            if (constraints[i].coefficients.size() != objective.size())
                throw InputError("constraint " + std::to_string(i) + " has the wrong number of coefficients");
        for (const auto& b : bounds)
            if (b.lower && b.upper && *b.lower > *b.upper)
                throw InputError("variable bound with lower > upper");
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline std::string to_string(LpStatus s)
{
    switch (s) {
    case LpStatus::Optimal:
        return "optimal";
    case LpStatus::Infeasible:
        return "infeasible";
    case LpStatus::Unbounded:
        break;
    }
    return "unbounded";
}

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;
    Rational value = 0;
    std::size_t pivots = 0;
};

namespace detail {

class Tableau {
public:
    Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis, std::size_t columns)
        : rows_(std::move(rows)), basis_(std::move(basis)), columns_(columns)
    {
    }

    /// Reduced costs for `cost` under the current basis; last entry is -objective.
    std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const
    {
        std::vector<Rational> z(columns_ + 1, Rational(0));
        for (std::size_t j = 0; j < columns_; ++j)
            z[j] = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0)
                continue;
            for (std::size_t j = 0; j <= columns_; ++j)
                if (rows_[i][j] != 0)
                    z[j] -= cb * rows_[i][j];
        }
        return z;
    }

    /// Bland's rule iterations; returns false if unbounded.
    bool optimize(std::vector<Rational>& z, const std::vector<bool>& allowed, std::size_t& pivots)
    {
        while (true) {
            std::size_t enter = columns_;
            for (std::size_t j = 0; j < columns_; ++j)
                if (allowed[j] && z[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == columns_)
                return true;
            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& a = rows_[i][enter];
                if (a <= 0)
                    continue;
                Rational ratio = rows_[i][columns_] / a;
                if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    best = std::move(ratio);
                    leave = i;
                }
            }
            if (leave == rows_.size())
                return false;
            pivot(leave, enter, z);
            ++pivots;
        }
    }

    void pivot(std::size_t r, std::size_t c, std::vector<Rational>& z)
    {
        auto& prow = rows_[r];
        const Rational inv = Rational(1) / prow[c];
        std::vector<std::size_t> nonzero;
        for (std::size_t j = 0; j <= columns_; ++j)
            if (prow[j] != 0) {
                prow[j] *= inv;
                nonzero.push_back(j);
            }
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[c] == 0)
                return;
            const Rational factor = row[c];
            for (std::size_t j : nonzero)
                row[j] -= factor * prow[j];
        };
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != r)
                eliminate(rows_[i]);
        eliminate(z);
        basis_[r] = c;
    }

    std::vector<std::vector<Rational>>& rows() { return rows_; }
    std::vector<std::size_t>& basis() { return basis_; }
    std::size_t columns() const { return columns_; }

    void drop_row(std::size_t r)
    {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

private:
    std::vector<std::vector<Rational>> rows_; // each row: columns_ coefficients + rhs
    std::vector<std::size_t> basis_;
    std::size_t columns_;
};

} // namespace detail

inline LpSolution lp_solve(const LinearProgram& lp)
{
    lp.validate();
    const std::size_t nvars = lp.variable_count();

    // Substitute x_j = shift_j + sum(sign * y_col) with y >= 0.
    struct Column {
        std::size_t var;
        int sign;
    };
    std::vector<Column> cols;
    std::vector<Rational> shift(nvars, Rational(0));
    std::vector<std::vector<std::pair<std::size_t, int>>> var_cols(nvars);
    std::vector<LinearConstraint> extra;
    for (std::size_t j = 0; j < nvars; ++j) {
        const VariableBound bound = lp.bounds.empty() ? VariableBound{} : lp.bounds[j];
        if (bound.lower) {
            shift[j] = *bound.lower;
            var_cols[j].push_back({cols.size(), +1});
            cols.push_back({j, +1});
            if (bound.upper) {
                LinearConstraint c;
                c.coefficients.assign(nvars, Rational(0));
                c.coefficients[j] = 1;
                c.relation = Relation::LessEqual;
                c.rhs = *bound.upper;
                extra.push_back(std::move(c));
            }
        } else if (bound.upper) {
            shift[j] = *bound.upper;
            var_cols[j].push_back({cols.size(), -1});
            cols.push_back({j, -1});
        } else {
            var_cols[j].push_back({cols.size(), +1});
            cols.push_back({j, +1});
            var_cols[j].push_back({cols.size(), -1});
            cols.push_back({j, -1});
        }
    }

    std::vector<const LinearConstraint*> all;
    for (const auto& c : lp.constraints)
        all.push_back(&c);
    for (const auto& c : extra)
        all.push_back(&c);

    const std::size_t m = all.size();
    const std::size_t ny = cols.size();
    std::size_t slack_count = 0;
    for (const auto* c : all)
        if (c->relation != Relation::Equal)
            ++slack_count;

    // Row layout: y columns | slack columns | artificial columns | rhs.
    std::vector<std::vector<Rational>> rows(m);
    std::vector<int> slack_sign(m, 0);
    std::vector<std::size_t> slack_col(m, 0);
    std::size_t next_slack = ny;
    std::vector<Rational> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = *all[i];
        rows[i].assign(ny, Rational(0));
        Rational b = c.rhs;
        for (std::size_t j = 0; j < nvars; ++j) {
            if (c.coefficients[j] == 0)
                continue;
            b -= c.coefficients[j] * shift[j];
            for (auto [col, sign] : var_cols[j])
                rows[i][col] = sign > 0 ? c.coefficients[j] : -c.coefficients[j];
        }
        if (c.relation != Relation::Equal) {
            slack_col[i] = next_slack++;
            slack_sign[i] = c.relation == Relation::LessEqual ? +1 : -1;
        }
        if (b < 0) {
            for (auto& a : rows[i])
                a = -a;
            b = -b;
            slack_sign[i] = -slack_sign[i];
        }
        rhs[i] = std::move(b);
    }
    std::size_t artificial_count = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (slack_sign[i] != +1)
            ++artificial_count;
    const std::size_t first_artificial = ny + slack_count;
    const std::size_t columns = first_artificial + artificial_count;
    std::vector<std::size_t> basis(m);
    std::size_t next_art = first_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        rows[i].resize(columns + 1, Rational(0));
        if (slack_sign[i] != 0)
            rows[i][slack_col[i]] = slack_sign[i];
        if (slack_sign[i] == +1) {
            basis[i] = slack_col[i];
        } else {
            rows[i][next_art] = 1;
            basis[i] = next_art++;
        }
        rows[i][columns] = rhs[i];
    }

    detail::Tableau tab(std::move(rows), std::move(basis), columns);
    LpSolution sol;

    if (artificial_count > 0) {
        std::vector<Rational> phase1(columns, Rational(0));
        for (std::size_t j = first_artificial; j < columns; ++j)
            phase1[j] = 1;
        auto z = tab.reduced_costs(phase1);
        std::vector<bool> allowed(columns, true);
        tab.optimize(z, allowed, sol.pivots);
        if (-z[columns] > 0) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < tab.rows().size();) {
            if (tab.basis()[i] < first_artificial) {
                ++i;
                continue;
            }
            std::size_t enter = first_artificial;
            for (std::size_t j = 0; j < first_artificial; ++j)
                if (tab.rows()[i][j] != 0) {
                    enter = j;
                    break;
                }
            if (enter == first_artificial) {
                tab.drop_row(i);
                continue;
            }
            tab.pivot(i, enter, z);
            ++sol.pivots;
            ++i;
        }
    }

    std::vector<Rational> cost(columns, Rational(0));
    Rational constant = 0;
    for (std::size_t j = 0; j < nvars; ++j) {
        constant += lp.objective[j] * shift[j];
        for (auto [col, sign] : var_cols[j])
            cost[col] = sign > 0 ? lp.objective[j] : -lp.objective[j];
    }
    auto z = tab.reduced_costs(cost);
    std::vector<bool> allowed(columns, true);
    for (std::size_t j = first_artificial; j < columns; ++j)
        allowed[j] = false;
    if (!tab.optimize(z, allowed, sol.pivots)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    std::vector<Rational> y(columns, Rational(0));
    for (std::size_t i = 0; i < tab.rows().size(); ++i)
        y[tab.basis()[i]] = tab.rows()[i][columns];
    sol.x = shift;
    for (std::size_t k = 0; k < ny; ++k)
        if (y[k] != 0)
            sol.x[cols[k].var] += cols[k].sign > 0 ? y[k] : -y[k];
    sol.value = constant - z[columns];
    sol.status = LpStatus::Optimal;
    return sol;
}

} // namespace rips_morse

#endif // RIPS_MORSE_LP_HPP
