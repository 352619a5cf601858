#include <gtest/gtest.h>

#include <random>

#include "parampac/error.hpp"
#include "parampac/lp.hpp"
#include "lp_oracle.hpp"

using namespace parampac;

using testutil::BruteResult;
using testutil::vertex_enumeration;

TEST(Lp, RandomProblemsAgreeWithVertexEnumeration) {
    std::mt19937 gen(2024);
    for (int rep = 0; rep < 50; ++rep) {
        const auto [c, a, b] = testutil::random_small_lp(gen);
        const std::size_t n = c.size();

        LpProblem lp;
        lp.objective = c;
        for (std::size_t i = 0; i < a.size(); ++i) lp.rows.push_back({a[i], RowSense::LessEq, b[i]});
        const LpSolution sol = solve_lp(lp);
        const BruteResult brute = vertex_enumeration(c, a, b);
        SCOPED_TRACE(rep);
        if (!brute.feasible) {
            EXPECT_EQ(sol.status, LpStatus::Infeasible);
            continue;
        }
        ASSERT_EQ(sol.status, LpStatus::Optimal);
        EXPECT_NEAR(sol.objective, brute.best, 1e-7);
        for (std::size_t i = 0; i < a.size(); ++i) {
            double lhs = 0;
            for (std::size_t j = 0; j < n; ++j) lhs += a[i][j] * sol.x[j];
            EXPECT_LE(lhs, b[i] + 1e-7);
        }
    }
}

TEST(Lp, StatusesAndBounds) {
    LpProblem unb;
    unb.objective = {-1.0, 0.0};
    unb.rows.push_back({{1.0, -1.0}, RowSense::LessEq, 1.0});
    EXPECT_EQ(solve_lp(unb).status, LpStatus::Unbounded);

    LpProblem inf;
    inf.objective = {1.0};
    inf.rows.push_back({{1.0}, RowSense::GreaterEq, 2.0});
    inf.rows.push_back({{1.0}, RowSense::LessEq, 1.0});
    EXPECT_EQ(solve_lp(inf).status, LpStatus::Infeasible);

    // min x - y, x free in [-5, inf), y <= 2 free below, x + y = 1.
    LpProblem b;
    b.objective = {1.0, -1.0};
    b.rows.push_back({{1.0, 1.0}, RowSense::Equal, 1.0});
    b.bounds = {{-5.0, std::numeric_limits<double>::infinity()}, {-std::numeric_limits<double>::infinity(), 2.0}};
    const LpSolution s = solve_lp(b);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.x[0], -1.0, 1e-9);
    EXPECT_NEAR(s.x[1], 2.0, 1e-9);
    EXPECT_NEAR(s.objective, -3.0, 1e-9);

    LpProblem bad;
    bad.objective = {1.0};
    bad.rows.push_back({{1.0, 2.0}, RowSense::LessEq, 1.0});
    EXPECT_THROW(solve_lp(bad), Error);
}

TEST(Lp, DegenerateProblemTerminates) {
    // Classic cycling example for the largest-coefficient rule.
    LpProblem lp;
    lp.objective = {-0.75, 20.0, -0.5, 6.0};
    lp.rows.push_back({{0.25, -8.0, -1.0, 9.0}, RowSense::LessEq, 0.0});
    lp.rows.push_back({{0.5, -12.0, -0.5, 3.0}, RowSense::LessEq, 0.0});
    lp.rows.push_back({{0.0, 0.0, 1.0, 0.0}, RowSense::LessEq, 1.0});
    const LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.objective, -1.25, 1e-9);
}
