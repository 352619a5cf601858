#include "parampac/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "parampac/error.hpp"
#include "parampac/rng.hpp"

namespace parampac {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

// Exponent vectors of total degree `deg`, first variable's exponent descending.
void enumerate(std::size_t var, unsigned left, Exponent& e, std::vector<Exponent>& out) {
    if (var + 1 == e.size()) {
        e[var] = left;
        out.push_back(e);
        return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
        e[var] = k;
        enumerate(var + 1, left - k, e, out);
    }
    e[var] = 0;
}

}  // namespace

PolyTemplate::PolyTemplate(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
    if (nvars == 0) {
        monomials_.push_back({});
        return;
    }
    Exponent e(nvars, 0);
    for (unsigned d = 0; d <= degree; ++d) enumerate(0, d, e, monomials_);
}

std::vector<double> PolyTemplate::evaluate_monomials(std::span<const double> x) const {
    std::vector<double> out(monomials_.size());
    for (std::size_t k = 0; k < monomials_.size(); ++k) {
        double v = 1.0;
        for (std::size_t i = 0; i < nvars_; ++i) v *= detail::power(x[i], monomials_[k][i]);
        out[k] = v;
    }
    return out;
}

RealPoly PolyTemplate::polynomial(std::span<const double> coeffs) const {
    RealPoly p(nvars_);
    for (std::size_t k = 0; k < monomials_.size() && k < coeffs.size(); ++k) p.add_term(monomials_[k], coeffs[k]);
    return p;
}

double poly_eval(const PolyTemplate& tmpl, std::span<const double> coeffs, std::span<const double> x) {
    const std::vector<double> m = tmpl.evaluate_monomials(x);
    double v = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) v += coeffs[k] * m[k];
    return v;
}

double PacPolynomial::operator()(std::span<const double> x) const { return poly_eval(tmpl, coeffs, x); }

std::size_t sample_count(double eps, double eta, std::size_t m) {
    if (!(eps > 0.0 && eps <= 1.0) || !(eta > 0.0 && eta <= 1.0) || m < 1) {
        throw Error(Errc::BadStatParam, "need eps, eta in (0,1] and m >= 1");
    }
    const long double l = (2.0L / eps) * (std::log(1.0L / eta) + static_cast<long double>(m));
    return static_cast<std::size_t>(std::ceil(l));
}

std::vector<std::vector<double>> draw_samples(const ParamSpace& space, std::size_t l, std::uint64_t seed) {
    if (l == 0) throw Error(Errc::InvalidArgument, "sample count must be at least 1");
    Xoshiro256ss rng(seed);
    std::vector<std::vector<double>> pts(l, std::vector<double>(space.dim()));
    for (auto& x : pts) {
        for (std::size_t j = 0; j < space.dim(); ++j) {
            x[j] = space.lo(j) + rng.uniform() * (space.hi(j) - space.lo(j));
        }
    }
    return pts;
}

SampleSet evaluate_samples(const PointFunction& oracle, std::vector<std::vector<double>> points,
                           std::uint64_t seed, std::string oracle_id, unsigned threads) {
    SampleSet s;
    s.seed = seed;
    s.oracle_id = std::move(oracle_id);
    s.values.assign(points.size(), 0.0);
    const std::size_t n = points.size();
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed = n;
    std::string cause;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                s.values[i] = oracle(points[i]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(mu);
                if (i < failed) {
                    failed = i;
                    cause = e.what();
                }
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed < n) throw OracleFailure(failed, cause);
    s.points = std::move(points);
    return s;
}

PacPolynomial fit_pac(const SampleSet& samples, const PolyTemplate& tmpl, const ParamSpace& space,
                      double eps, double eta, const FitOptions& options) {
    const std::size_t nc = tmpl.size();
    const std::size_t need = sample_count(eps, eta, nc + 1);
    if (samples.size() < need && !options.allow_unsound) {
        throw Error(Errc::TooFewSamples, "fit needs " + std::to_string(need) + " samples, got " +
                                             std::to_string(samples.size()));
    }
    if (samples.size() == 0) throw Error(Errc::TooFewSamples, "no samples to fit");
    if (tmpl.nvars() != space.dim()) throw Error(Errc::InvalidArgument, "template dimension mismatch");

    // Fit in t = (2x - lo - hi) / (hi - lo) in [-1,1]: same polynomial space,
    // far better conditioned than raw monomials of small parameters.
    const std::size_t n = space.dim();
    std::vector<double> scale(n), shift(n);
    for (std::size_t i = 0; i < n; ++i) {
        scale[i] = 2.0 / (space.hi(i) - space.lo(i));
        shift[i] = -(space.lo(i) + space.hi(i)) / (space.hi(i) - space.lo(i));
    }

    LpProblem lp;
    lp.objective.assign(nc + 1, 0.0);
    lp.objective[nc] = 1.0;
    lp.bounds.assign(nc + 1, VarBounds::free());
    lp.bounds[nc] = VarBounds{};
    std::vector<double> t(n);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) t[i] = scale[i] * samples.points[k][i] + shift[i];
        const std::vector<double> m = tmpl.evaluate_monomials(t);
        const double f = samples.values[k];
        LpRow up, down;
        up.coeffs = m;
        up.coeffs.push_back(-1.0);
        up.rhs = f;  // c.m - lambda <= f
        down.coeffs.resize(nc + 1);
        for (std::size_t j = 0; j < nc; ++j) down.coeffs[j] = -m[j];
        down.coeffs[nc] = -1.0;
        down.rhs = -f;  // -c.m - lambda <= -f
        lp.rows.push_back(std::move(up));
        lp.rows.push_back(std::move(down));
    }
    const LpSolution sol = solve_lp(lp, options.lp);
    if (sol.status != LpStatus::Optimal) {
        throw Error(Errc::LpFailure, sol.status == LpStatus::Infeasible ? "fitting LP infeasible"
                                                                        : "fitting LP unbounded");
    }

    // Substitute t_i = scale_i x_i + shift_i back into the monomial basis.
    RealPoly tpoly(n);
    for (std::size_t j = 0; j < nc; ++j) {
        RealPoly term = RealPoly::constant(n, sol.x[j]);
        for (std::size_t i = 0; i < n; ++i) {
            const unsigned e = tmpl.monomials()[j][i];
            if (e == 0) continue;
            RealPoly lin = RealPoly::variable(n, i).scaled(scale[i]) + RealPoly::constant(n, shift[i]);
            term = term * lin.pow(e);
        }
        tpoly += term;
    }

    PacPolynomial out;
    out.tmpl = tmpl;
    out.params = space.names();
    out.coeffs.resize(nc);
    for (std::size_t j = 0; j < nc; ++j) out.coeffs[j] = tpoly.coefficient(tmpl.monomials()[j]);
    out.eps = eps;
    out.eta = eta;
    out.samples = samples.size();
    out.seed = samples.seed;
    double resid = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        resid = std::max(resid, std::abs(samples.values[k] - out(samples.points[k])));
    }
    out.lambda = std::max(std::max(sol.x[nc], 0.0), resid);
    return out;
}

}  // namespace parampac
