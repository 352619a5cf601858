#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace parampac {

enum class RowSense { LessEq, GreaterEq, Equal };

struct LpRow {
    std::vector<double> coeffs;  // dense, one per variable
    RowSense sense = RowSense::LessEq;
    double rhs = 0.0;
};

struct VarBounds {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    static VarBounds free() {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
};

/// minimize objective . x  subject to rows and per-variable bounds.
struct LpProblem {
    std::vector<double> objective;
    std::vector<LpRow> rows;
    std::vector<VarBounds> bounds;  // empty means x >= 0 for every variable
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
    std::size_t iterations = 0;
};

struct LpOptions {
    std::size_t max_iterations = 200000;
    double pivot_tolerance = 1e-11;
    double cost_tolerance = 1e-10;
    double feasibility_tolerance = 1e-9;
};

/// Two-phase primal simplex on a dense condensed tableau with Bland's rule.
/// Pivoting depends only on the input, so the returned vertex is deterministic.
/// Throws Error(IterationLimit) when max_iterations pivots do not suffice and
/// Error(InvalidArgument) on non-finite or mis-sized input.
LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace parampac
