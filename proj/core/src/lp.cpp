#include "parampac/lp.hpp"

#include <algorithm>
#include <cmath>

#include "parampac/error.hpp"

namespace parampac {

namespace {

// Dictionary form of  min c.y  s.t.  A y <= b,  y >= 0:
//   x_B[i] = b[i] - sum_j T[i][j] x_N[j],   z = z0 + sum_j d[j] x_N[j].
// Variable ids: structural 0..n-1, slacks n..n+m-1, the phase-1 auxiliary n+m.
class Dictionary {
public:
    Dictionary(std::size_t rows, std::size_t cols)
        : m_(rows), k_(cols), t_(rows * cols, 0.0), b_(rows, 0.0), d_(cols, 0.0), basic_(rows), nonbasic_(cols) {}

    double& at(std::size_t i, std::size_t j) { return t_[i * k_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * k_ + j]; }

    void pivot(std::size_t p, std::size_t q) {
        const double piv = at(p, q);
        double* rowp = &t_[p * k_];
        for (std::size_t j = 0; j < k_; ++j) rowp[j] /= piv;
        rowp[q] = 1.0 / piv;
        b_[p] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == p) continue;
            double* row = &t_[i * k_];
            const double f = row[q];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < k_; ++j) row[j] -= f * rowp[j];
            row[q] = -f * rowp[q];
            b_[i] -= f * b_[p];
        }
        const double dq = d_[q];
        if (dq != 0.0) {
            for (std::size_t j = 0; j < k_; ++j) d_[j] -= dq * rowp[j];
            d_[q] = -dq * rowp[q];
            z0_ += dq * b_[p];
        }
        std::swap(basic_[p], nonbasic_[q]);
    }

    // One pivot by Bland's rule: lowest-id entering variable, ties in the ratio test to the lowest id.
    enum class Step { Pivoted, Optimal, Unbounded };
    Step step(const LpOptions& opt) {
        std::size_t q = k_;
        for (std::size_t j = 0; j < k_; ++j) {
            if (nonbasic_[j] == blocked_) continue;
            if (d_[j] < -opt.cost_tolerance && (q == k_ || nonbasic_[j] < nonbasic_[q])) q = j;
        }
        if (q == k_) return Step::Optimal;
        std::size_t p = m_;
        double best = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double a = at(i, q);
            if (a <= opt.pivot_tolerance) continue;
            const double r = std::max(b_[i], 0.0) / a;
            if (p == m_ || r < best - 1e-12 * std::max(1.0, std::abs(best))) {
                p = i;
                best = r;
            } else if (r <= best + 1e-12 * std::max(1.0, std::abs(best)) && basic_[i] < basic_[p]) {
                p = i;
                best = std::min(best, r);
            }
        }
        if (p == m_) return Step::Unbounded;
        pivot(p, q);
        return Step::Pivoted;
    }

    Step run(const LpOptions& opt, std::size_t& iterations) {
        for (;;) {
            if (iterations >= opt.max_iterations) {
                throw Error(Errc::IterationLimit, "simplex exceeded " + std::to_string(opt.max_iterations) + " pivots");
            }
            const Step s = step(opt);
            if (s != Step::Pivoted) return s;
            ++iterations;
        }
    }

    std::size_t m_, k_;
    std::vector<double> t_, b_, d_;
    std::vector<std::size_t> basic_, nonbasic_;
    double z0_ = 0.0;
    std::size_t blocked_ = static_cast<std::size_t>(-1);
};

struct Column {
    std::size_t y;
    double sign;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const LpOptions& opt) {
    const std::size_t nx = problem.objective.size();
    if (!problem.bounds.empty() && problem.bounds.size() != nx) {
        throw Error(Errc::InvalidArgument, "bounds do not match the variable count");
    }
    for (double c : problem.objective) {
        if (!std::isfinite(c)) throw Error(Errc::InvalidArgument, "non-finite objective coefficient");
    }
    for (const LpRow& r : problem.rows) {
        if (r.coeffs.size() != nx) throw Error(Errc::InvalidArgument, "constraint row has the wrong length");
        if (!std::isfinite(r.rhs)) throw Error(Errc::InvalidArgument, "non-finite right-hand side");
        for (double a : r.coeffs) {
            if (!std::isfinite(a)) throw Error(Errc::InvalidArgument, "non-finite constraint coefficient");
        }
    }

    // x_j = offset_j + sum sign * y.
    std::vector<double> offset(nx, 0.0);
    std::vector<std::vector<Column>> cols(nx);
    std::vector<std::pair<std::size_t, double>> upper;  // y <= value
    std::size_t ny = 0;
    for (std::size_t j = 0; j < nx; ++j) {
        const VarBounds vb = problem.bounds.empty() ? VarBounds{} : problem.bounds[j];
        if (std::isnan(vb.lo) || std::isnan(vb.hi) || vb.lo == INFINITY || vb.hi == -INFINITY) {
            throw Error(Errc::InvalidArgument, "invalid variable bounds");
        }
        if (vb.lo > vb.hi) return {LpStatus::Infeasible, 0.0, {}, 0};
        if (std::isfinite(vb.lo)) {
            offset[j] = vb.lo;
            cols[j].push_back({ny, 1.0});
            if (std::isfinite(vb.hi)) upper.emplace_back(ny, vb.hi - vb.lo);
            ++ny;
        } else if (std::isfinite(vb.hi)) {
            offset[j] = vb.hi;
            cols[j].push_back({ny++, -1.0});
        } else {
            cols[j].push_back({ny++, 1.0});
            cols[j].push_back({ny++, -1.0});
        }
    }

    struct StdRow {
        std::vector<double> a;
        double b;
    };
    std::vector<StdRow> rows;
    auto push = [&](const std::vector<double>& coeffs, double rhs, double sign) {
        StdRow r{std::vector<double>(ny, 0.0), 0.0};
        double shift = 0.0;
        for (std::size_t j = 0; j < nx; ++j) {
            shift += coeffs[j] * offset[j];
            for (const Column& c : cols[j]) r.a[c.y] += sign * coeffs[j] * c.sign;
        }
        r.b = sign * (rhs - shift);
        rows.push_back(std::move(r));
    };
    for (const LpRow& r : problem.rows) {
        if (r.sense != RowSense::GreaterEq) push(r.coeffs, r.rhs, 1.0);
        if (r.sense != RowSense::LessEq) push(r.coeffs, r.rhs, -1.0);
    }
    for (const auto& [y, v] : upper) {
        StdRow r{std::vector<double>(ny, 0.0), v};
        r.a[y] = 1.0;
        rows.push_back(std::move(r));
    }

    std::vector<double> cy(ny, 0.0);
    double c0 = 0.0;
    for (std::size_t j = 0; j < nx; ++j) {
        c0 += problem.objective[j] * offset[j];
        for (const Column& c : cols[j]) cy[c.y] += problem.objective[j] * c.sign;
    }

    const std::size_t m = rows.size();
    const std::size_t aux = ny + m;
    bool need_phase1 = false;
    for (const StdRow& r : rows) need_phase1 = need_phase1 || r.b < 0.0;

    Dictionary dict(m, ny + (need_phase1 ? 1 : 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < ny; ++j) dict.at(i, j) = rows[i].a[j];
        dict.b_[i] = rows[i].b;
        dict.basic_[i] = ny + i;
    }
    for (std::size_t j = 0; j < ny; ++j) dict.nonbasic_[j] = j;

    LpSolution sol;
    std::size_t iterations = 0;
    if (need_phase1) {
        const std::size_t qa = ny;
        dict.nonbasic_[qa] = aux;
        for (std::size_t i = 0; i < m; ++i) dict.at(i, qa) = -1.0;
        dict.d_[qa] = 1.0;
        std::size_t p = 0;
        for (std::size_t i = 1; i < m; ++i) {
            if (dict.b_[i] < dict.b_[p]) p = i;
        }
        dict.pivot(p, qa);
        ++iterations;
        dict.run(opt, iterations);
        if (dict.z0_ > opt.feasibility_tolerance) {
            sol.status = LpStatus::Infeasible;
            sol.iterations = iterations;
            return sol;
        }
        // Drive the auxiliary out of the basis if it is still there (at level zero).
        for (std::size_t i = 0; i < m; ++i) {
            if (dict.basic_[i] != aux) continue;
            std::size_t q = dict.k_;
            for (std::size_t j = 0; j < dict.k_; ++j) {
                if (std::abs(dict.at(i, j)) > opt.pivot_tolerance && (q == dict.k_ || std::abs(dict.at(i, j)) > std::abs(dict.at(i, q)))) q = j;
            }
            if (q < dict.k_) {
                dict.pivot(i, q);
                ++iterations;
            }
        }
        for (std::size_t i = 0; i < m; ++i) dict.b_[i] = std::max(dict.b_[i], 0.0);
        // The auxiliary stays in the dictionary but may never enter again.
        dict.blocked_ = aux;
    }

    // Phase 2 objective in terms of the current nonbasic variables.
    std::fill(dict.d_.begin(), dict.d_.end(), 0.0);
    dict.z0_ = c0;
    for (std::size_t j = 0; j < dict.k_; ++j) {
        if (dict.nonbasic_[j] < ny) dict.d_[j] += cy[dict.nonbasic_[j]];
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t v = dict.basic_[i];
        if (v >= ny || cy[v] == 0.0) continue;
        dict.z0_ += cy[v] * dict.b_[i];
        for (std::size_t j = 0; j < dict.k_; ++j) dict.d_[j] -= cy[v] * dict.at(i, j);
    }
    const auto status = dict.run(opt, iterations);
    sol.iterations = iterations;
    if (status == Dictionary::Step::Unbounded) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    std::vector<double> y(ny, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (dict.basic_[i] < ny) y[dict.basic_[i]] = std::max(dict.b_[i], 0.0);
    }
    sol.x.assign(nx, 0.0);
    for (std::size_t j = 0; j < nx; ++j) {
        double v = offset[j];
        for (const Column& c : cols[j]) v += c.sign * y[c.y];
        sol.x[j] = v;
    }
    sol.status = LpStatus::Optimal;
    sol.objective = 0.0;
    for (std::size_t j = 0; j < nx; ++j) sol.objective += problem.objective[j] * sol.x[j];
    return sol;
}

}  // namespace parampac
