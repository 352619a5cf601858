// Acceptance runner: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs; the exit code is 0 iff every selected criterion passed.
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lp_oracle.hpp"
#include "parampac/analysis.hpp"
#include "parampac/elim.hpp"
#include "parampac/error.hpp"
#include "parampac/lp.hpp"
#include "parampac/mc.hpp"
#include "parampac/oracle.hpp"
#include "parampac/parser.hpp"
#include "parampac/rng.hpp"
#include "parampac/scenario.hpp"
#include "parampac_cli/cli.hpp"
#include "test_util.hpp"

using namespace parampac;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

const std::string kCoin = testutil::model_path("coin.pm");
const char* const kChecked = R"(P=? [ F "checked" ])";

std::shared_ptr<const PDtmrm> coin_model() {
    static const auto m = std::make_shared<const PDtmrm>(load_model(kCoin));
    return m;
}

PointFunction coin_oracle() { return make_model_oracle(coin_model(), parse_formula(kChecked)); }

std::string cli(std::vector<std::string> args, int* code = nullptr) {
    std::ostringstream out, err;
    const int c = cli::run(args, out, err);
    if (code) *code = c;
    if (c == 1) throw std::runtime_error("cli failed: " + err.str());
    return out.str();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

PacPolynomial injected(unsigned degree, std::vector<double> coeffs, double lambda) {
    PacPolynomial f;
    f.tmpl = PolyTemplate(2, degree);
    f.params = {"p", "q"};
    f.coeffs = std::move(coeffs);
    f.lambda = lambda;
    f.samples = sample_count(0.05, 0.05, f.tmpl.size() + 1);
    return f;
}

// Reference linear fit: -0.035 + 1.063 q - 0.718 p, lambda 0.011.
PacPolynomial reference_linear() { return injected(1, {-0.035, -0.718, 1.063}, 0.011); }

Verdict c1() {
    const std::string text = cli({"exact", kCoin, "-f", kChecked});
    const std::vector<std::string> names = {"p", "q"};
    const Expr e = parse_expr(text, names);
    const auto pts = draw_samples(coin_model()->chain().space(), 100, kDefaultSeed);
    double worst = 0;
    for (const auto& x : pts) worst = std::max(worst, std::abs(e.evaluate(x) - testutil::coin_f(x)));
    return {worst <= 1e-9, "exact = " + text.substr(0, text.size() - 1) + fmt(", max deviation %.2e over 100 points", worst)};
}

Verdict c2() {
    const double a = std::stod(cli({"eval", kCoin, "-f", kChecked, "-x", "p=0.05", "-x", "q=0.8"}));
    const double b = std::stod(cli({"eval", kCoin, "-f", kChecked, "-x", "p=0.01", "-x", "q=0.8"}));
    return {std::abs(a - 0.780488) <= 1e-6 && std::abs(b - 0.796) <= 5e-4,
            fmt("f(0.05,0.8) = %.6f, f(0.01,0.8) = %.6f", a, b)};
}

Verdict c3() {
    const std::size_t a = sample_count(0.05, 0.05, 1), b = sample_count(0.05, 0.05, 4),
                      c = sample_count(0.01, 0.001, 4), d = sample_count(0.05, 0.05, 22);
    return {a == 160 && b == 280 && c == 2182 && d == 1000,
            "counts " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ", " +
                std::to_string(d)};
}

Verdict c4() {
    const ParamSpace& s = coin_model()->chain().space();
    const PointFunction f = coin_oracle();
    const PolyTemplate t(2, 1);
    const std::vector<double> want = {-0.035, -0.718, 1.063};
    double worst_lambda = 0, worst_coeff = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto pts = draw_samples(s, sample_count(0.05, 0.05, t.size() + 1), seed);
        const PacPolynomial fit = fit_pac(evaluate_samples(f, pts, seed, "coin"), t, s, 0.05, 0.05);
        worst_lambda = std::max(worst_lambda, fit.lambda);
        for (std::size_t i = 0; i < 3; ++i) worst_coeff = std::max(worst_coeff, std::abs(fit.coeffs[i] - want[i]));
    }
    return {worst_lambda <= 0.02 && worst_coeff <= 0.15,
            fmt("10 seeds: max lambda %.4f, max coefficient deviation %.4f", worst_lambda, worst_coeff)};
}

Verdict c5() {
    const ParamSpace& s = coin_model()->chain().space();
    const PacPolynomial fit = reference_linear();
    const LinearSafetyResult safe = linear_safety_check(fit, s, 0.85);
    const LinearSafetyResult unsafe = linear_safety_check(fit, s, 0.6);
    const double prob = unsafe.superlevel.probability;
    return {safe.kind == LinearSafetyResult::Kind::CertifiedSafe && std::abs(prob - 0.288) <= 0.001,
            fmt("max(fhat)+lambda = %.4f; P(fhat - lambda > 0.6) = %.4f", safe.max_upper, prob)};
}

Verdict c6() {
    const ParamSpace& s = coin_model()->chain().space();
    const PointFunction f = coin_oracle();
    const auto pts = draw_samples(s, 280, kDefaultSeed);
    const CounterexampleResult r =
        counterexample_search(f, reference_linear(), evaluate_samples(f, pts, kDefaultSeed, "coin"), s, 0.6, 10);
    const bool at_corner = r.found && r.point.size() == 2 && r.point[0] == 0.01 && r.point[1] == 0.8;
    return {at_corner && std::abs(r.value - 0.796) <= 5e-4,
            r.found ? fmt("counterexample (%.4f, %.4f) with f = %.6f", r.point[0], r.point[1], r.value)
                    : std::string("no counterexample")};
}

Verdict c7() {
    // The reference quadratic fit. Its margin is not given, so it is taken
    // as the largest residual of those coefficients on a training sample.
    const ParamSpace& s = coin_model()->chain().space();
    PacPolynomial fit = injected(2, {0.013, -1.442, 0.925, 2.072, 0.953, 0.085}, 0.0);
    const auto pts = draw_samples(s, fit.samples, kDefaultSeed);
    for (const auto& x : pts) fit.lambda = std::max(fit.lambda, std::abs(fit(x) - testutil::coin_f(x)));
    const NearBetaVerdict at05 = near_beta_check(fit, s, 0.5, 0.05, 2.0, 1.0);
    const NearBetaVerdict at04 = near_beta_check(fit, s, 0.5, 0.04, 2.0, 1.0);
    return {std::abs(at05.ub - 0.0432) <= 0.0015 && at05.holds && !at04.holds,
            fmt("UB = %.5f (lambda %.4f); certifies 0.05: ", at05.ub, fit.lambda) + (at05.holds ? "yes" : "no") +
                ", certifies 0.04: " + (at04.holds ? "yes" : "no")};
}

Verdict c8() {
    const ParamSpace& s = coin_model()->chain().space();
    const PointFunction f = coin_oracle();
    const auto pts = draw_samples(s, sample_count(0.05, 0.05, PolyTemplate(2, 5).size() + 1), kDefaultSeed);
    const SampleSet set = evaluate_samples(f, pts, kDefaultSeed, "coin");
    std::vector<double> lambdas;
    bool monotone = true;
    for (unsigned d = 1; d <= 5; ++d) {
        lambdas.push_back(fit_pac(set, PolyTemplate(2, d), s, 0.05, 0.05).lambda);
        if (d > 1 && lambdas[d - 1] > lambdas[d - 2] + 1e-9) monotone = false;
    }
    std::string detail = "lambda by degree:";
    for (double l : lambdas) detail += fmt(" %.3e", l);
    return {monotone, detail};
}

Verdict c9() {
    const ParamSpace& s = coin_model()->chain().space();
    const PointFunction f = coin_oracle();
    const PolyTemplate t(2, 1);
    int exceed = 0;
    double worst = 0;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const auto pts = draw_samples(s, sample_count(0.05, 0.05, t.size() + 1), seed);
        const PacPolynomial fit = fit_pac(evaluate_samples(f, pts, seed, "coin"), t, s, 0.05, 0.05);
        const auto fresh = draw_samples(s, 20000, derive_seed(seed, 1));
        std::size_t bad = 0;
        for (const auto& x : fresh) bad += std::abs(fit(x) - testutil::coin_f(x)) > fit.lambda;
        const double rate = static_cast<double>(bad) / static_cast<double>(fresh.size());
        worst = std::max(worst, rate);
        exceed += rate > 0.05;
    }
    return {exceed <= 2, fmt("%.0f of 20 fits exceed eps on fresh samples (worst rate %.4f)", exceed, worst)};
}

Verdict c10() {
    const auto geo = std::make_shared<const PDtmrm>(load_model(testutil::model_path("geo.pm")));
    const ParamSpace& s = geo->chain().space();
    const PointFunction f = make_model_oracle(geo, parse_formula(R"(E{"steps"}=? [ F "done" ])"));
    // 10^6-point Monte Carlo reference of E_P[f] with its standard error.
    const auto ref = draw_samples(s, 1000000, 77);
    double mean = 0, m2 = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double v = 1.0 / (1.0 - ref[i][0]);
        const double d = v - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (v - mean);
    }
    const double se = std::sqrt(m2 / static_cast<double>(ref.size() - 1) / static_cast<double>(ref.size()));
    std::vector<double> lb;
    bool ok = true;
    for (unsigned d = 1; d <= 3; ++d) {
        const PolyTemplate t(1, d);
        const auto pts = draw_samples(s, sample_count(0.05, 0.05, t.size() + 1), kDefaultSeed);
        const PacPolynomial fit = fit_pac(evaluate_samples(f, pts, kDefaultSeed, "geo"), t, s, 0.05, 0.05);
        lb.push_back(reward_expectation_bound(fit, s, 0.0).lower_bound);
        ok = ok && lb.back() <= mean + 3 * se;
        if (d > 1) ok = ok && lb[d - 1] > lb[d - 2];
    }
    return {ok, fmt("lower bounds %.5f, %.5f, %.5f", lb[0], lb[1], lb[2]) + fmt(" vs E[f] = %.5f +- %.1e", mean, se)};
}

Verdict c11() {
    const ParamSpace& s = coin_model()->chain().space();
    const RatFun exact = eliminate_reachability(coin_model()->chain(), coin_model()->chain().labels().at("checked"));
    const PolyTemplate t(2, 2);
    const PointFunction f = coin_oracle();
    const auto pts = draw_samples(s, sample_count(0.05, 0.05, t.size() + 1), kDefaultSeed);
    const PacPolynomial fit = fit_pac(evaluate_samples(f, pts, kDefaultSeed, "coin"), t, s, 0.05, 0.05);
    std::string center_note;
    try {
        const TaylorReport c = taylor_compare(exact, s, 2, TaylorCenter::Barycenter, &fit);
        center_note = fmt(" (at the barycenter: fit %.2e vs Taylor %.2e)", *c.dist_fit, c.dist_taylor);
    } catch (const Error&) {
    }
    try {
        const TaylorReport o = taylor_compare(exact, s, 2, TaylorCenter::Origin, &fit);
        return {*o.dist_fit < o.dist_taylor,
                fmt("||f - fhat||_2 = %.3e, ||f - taylor(origin)||_2 = %.3e", *o.dist_fit, o.dist_taylor)};
    } catch (const Error& e) {
        return {false, std::string("origin Taylor expansion undefined: ") + e.what() + center_note};
    }
}

Verdict c12() {
    const ParamSpace& s = coin_model()->chain().space();
    const std::vector<std::string> names = {"p", "q"};
    const PointFunction mc = coin_oracle();
    const PointFunction closed = make_expr_oracle(parse_expr("q^2/(q + 2*p - 2*p*q)", names));
    double oracle_dev = 0;
    for (const auto& x : draw_samples(s, 100, 12)) oracle_dev = std::max(oracle_dev, std::abs(mc(x) - closed(x)));

    double until_dev = 0;
    for (const auto& x : draw_samples(s, 20, 13)) {
        const Dtmc d = instantiate(*coin_model(), x);
        const StateSet all(d.num_states(), true), t = d.label("checked");
        const auto a = prob_until(d, all, t), b = prob_bounded_until(d, all, t, 200);
        for (std::size_t i = 0; i < a.size(); ++i) until_dev = std::max(until_dev, std::abs(a[i] - b[i]));
    }

    std::mt19937 gen(2024);
    double lp_dev = 0;
    bool statuses = true;
    for (int rep = 0; rep < 50; ++rep) {
        const auto [c, a, b] = testutil::random_small_lp(gen);
        LpProblem lp;
        lp.objective = c;
        for (std::size_t i = 0; i < a.size(); ++i) lp.rows.push_back({a[i], RowSense::LessEq, b[i]});
        const LpSolution sol = solve_lp(lp);
        const auto brute = testutil::vertex_enumeration(c, a, b);
        if (!brute.feasible) {
            statuses = statuses && sol.status == LpStatus::Infeasible;
        } else if (sol.status != LpStatus::Optimal) {
            statuses = false;
        } else {
            lp_dev = std::max(lp_dev, std::abs(sol.objective - brute.best));
        }
    }
    return {oracle_dev <= 1e-9 && until_dev <= 1e-6 && lp_dev <= 1e-7 && statuses,
            fmt("oracles %.1e, bounded vs unbounded %.1e, LP vs vertices %.1e", oracle_dev, until_dev, lp_dev)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Verdict()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
    std::size_t only = 0;
    if (argc > 1) only = std::stoul(argv[1]);
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && only != i + 1) continue;
        Verdict v;
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << (i + 1) << ": " << (v.pass ? "PASS" : "FAIL") << " - " << v.detail << "\n";
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
