#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace rips_morse;

namespace {

LinearConstraint row(std::vector<Rational> a, Relation rel, Rational b)
{
    return LinearConstraint{std::move(a), rel, std::move(b)};
}

/// Solves A x = b by Gaussian elimination; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0)
                continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t j = 0; j < n; ++j)
                a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return x;
}

/**
 * Optimum of min c.x over {A x (rel) b, x >= 0} by enumerating every
 * vertex (n tight constraints among rows and sign bounds). Assumes the
 * feasible region is a nonempty polytope.
 */
std::optional<Rational> vertex_enumeration(const LinearProgram& lp)
{
    const std::size_t n = lp.variable_count();
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (const auto& c : lp.constraints) {
        rows.push_back(c.coefficients);
        rhs.push_back(c.rhs);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        rows.push_back(e);
        rhs.push_back(0);
    }
    auto feasible = [&](const std::vector<Rational>& x) {
        for (const auto& c : lp.constraints) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < n; ++j)
                lhs += c.coefficients[j] * x[j];
            if ((c.relation == Relation::LessEqual && lhs > c.rhs) ||
                (c.relation == Relation::GreaterEqual && lhs < c.rhs) ||
                (c.relation == Relation::Equal && lhs != c.rhs))
                return false;
        }
        return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v >= 0; });
    };
    std::optional<Rational> best;
    std::vector<bool> pick(rows.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
    do {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (pick[i]) {
                a.push_back(rows[i]);
                b.push_back(rhs[i]);
            }
        const auto x = solve_square(a, b);
        if (!x || !feasible(*x))
            continue;
        Rational value = 0;
        for (std::size_t j = 0; j < n; ++j)
            value += lp.objective[j] * (*x)[j];
        if (!best || value < *best)
            best = value;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

Rational q(long a, long b = 1)
{
    return make_rational(a, b);
}

} // namespace

TEST_CASE("trivial programs")
{
    LinearProgram one;
    one.objective = {q(1)};
    one.constraints = {row({q(1)}, Relation::GreaterEqual, q(3))};
    const auto a = lp_solve(one);
    REQUIRE(a.status == LpStatus::Optimal);
    CHECK(a.x[0] == 3);
    CHECK(a.value == 3);

    LinearProgram two;
    two.objective = {q(1), q(1)};
    two.constraints = {row({q(1), q(0)}, Relation::GreaterEqual, q(1)),
                       row({q(0), q(1)}, Relation::GreaterEqual, q(2))};
    CHECK(lp_solve(two).value == 3);
}

TEST_CASE("cycling instance terminates at the vertex-enumeration optimum")
{
    // Beale's example: the textbook most-negative-cost rule cycles here.
    LinearProgram lp;
    lp.objective = {q(-3, 4), q(20), q(-1, 2), q(6)};
    lp.constraints = {row({q(1, 4), q(-8), q(-1), q(9)}, Relation::LessEqual, q(0)),
                      row({q(1, 2), q(-12), q(-1, 2), q(3)}, Relation::LessEqual, q(0)),
                      row({q(0), q(0), q(1), q(0)}, Relation::LessEqual, q(1))};
    const auto sol = lp_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    const auto oracle_value = vertex_enumeration(lp);
    REQUIRE(oracle_value);
    CHECK(sol.value == *oracle_value);
    CHECK(sol.value == q(-5, 4));
    Rational check = 0;
    for (std::size_t j = 0; j < 4; ++j)
        check += lp.objective[j] * sol.x[j];
    CHECK(check == sol.value);
}

TEST_CASE("infeasible and unbounded programs are statuses")
{
    LinearProgram infeasible;
    infeasible.objective = {q(1)};
    infeasible.constraints = {row({q(1)}, Relation::LessEqual, q(1)), row({q(1)}, Relation::GreaterEqual, q(2))};
    CHECK(lp_solve(infeasible).status == LpStatus::Infeasible);

    LinearProgram unbounded;
    unbounded.objective = {q(-1)};
    CHECK(lp_solve(unbounded).status == LpStatus::Unbounded);

    LinearProgram free_var;
    free_var.objective = {q(1)};
    free_var.bounds = {VariableBound{std::nullopt, std::nullopt}};
    CHECK(lp_solve(free_var).status == LpStatus::Unbounded);
}

TEST_CASE("variable bounds and equality rows")
{
    LinearProgram lp;
    lp.objective = {q(1), q(-1)};
    lp.bounds = {VariableBound{q(-5), q(5)}, VariableBound{std::nullopt, q(2)}};
    lp.constraints = {row({q(1), q(1)}, Relation::Equal, q(1))};
    const auto sol = lp_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    // x = 1 - y, objective 1 - 2y, y <= 2 and x >= -5 -> y = 2, x = -1
    CHECK(sol.x[0] == -1);
    CHECK(sol.x[1] == 2);
    CHECK(sol.value == -3);

    LinearProgram redundant;
    redundant.objective = {q(1), q(1)};
    redundant.constraints = {row({q(1), q(1)}, Relation::Equal, q(2)), row({q(2), q(2)}, Relation::Equal, q(4)),
                             row({q(1), q(0)}, Relation::GreaterEqual, q(1, 2))};
    const auto r = lp_solve(redundant);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 2);

    LinearProgram bad;
    bad.objective = {q(1)};
    bad.constraints = {row({q(1), q(1)}, Relation::LessEqual, q(1))};
    CHECK_THROWS_AS(lp_solve(bad), InputError);
    bad.constraints.clear();
    bad.bounds = {VariableBound{q(2), q(1)}};
    CHECK_THROWS_AS(lp_solve(bad), InputError);
}

TEST_CASE("random bounded programs match vertex enumeration")
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<long> cap(1, 8);
    std::uniform_int_distribution<int> rel(0, 2);
    std::size_t optimal = 0;
    for (int trial = 0; trial < 300; ++trial) {
        LinearProgram lp;
        const std::size_t n = 3;
        for (std::size_t j = 0; j < n; ++j)
            lp.objective.push_back(q(coef(rng)));
        // box rows keep the region bounded
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> e(n, q(0));
            e[j] = 1;
            lp.constraints.push_back(row(e, Relation::LessEqual, q(cap(rng))));
        }
        for (int i = 0; i < 3; ++i) {
            std::vector<Rational> a;
            for (std::size_t j = 0; j < n; ++j)
                a.push_back(q(coef(rng)));
            const int r = rel(rng);
            lp.constraints.push_back(row(a,
                                         r == 0   ? Relation::LessEqual
                                         : r == 1 ? Relation::GreaterEqual
                                                  : Relation::Equal,
                                         q(coef(rng))));
        }
        const auto sol = lp_solve(lp);
        const auto expected = vertex_enumeration(lp);
        if (!expected) {
            CHECK(sol.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.value == *expected);
        ++optimal;
        const auto again = lp_solve(lp);
        CHECK(again.x == sol.x);
        CHECK(again.pivots == sol.pivots);
    }
    CHECK(optimal > 50);
}
