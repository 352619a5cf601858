#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "parampac/analysis.hpp"
#include "parampac/error.hpp"
#include "test_util.hpp"

using namespace parampac;

namespace {

RealPoly poly2(std::vector<double> c) {
    return PolyTemplate(2, 2).polynomial(c);
}

PacPolynomial make_fit(const PolyTemplate& t, std::vector<double> c, double lambda) {
    PacPolynomial f;
    f.tmpl = t;
    f.params = {"p", "q"};
    f.coeffs = std::move(c);
    f.lambda = lambda;
    f.samples = sample_count(0.05, 0.05, t.size() + 1);
    return f;
}

// Midpoint rule on a fine grid: an independent check for the box integrals.
double grid_mean(const std::function<double(double, double)>& g, const ParamSpace& s, int n) {
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = s.lo(0) + (i + 0.5) / n * (s.hi(0) - s.lo(0));
            const double y = s.lo(1) + (j + 0.5) / n * (s.hi(1) - s.lo(1));
            sum += g(x, y);
        }
    }
    return sum / (static_cast<double>(n) * n);
}

}  // namespace

TEST(Analysis, BoxIntegralMatchesGrid) {
    const ParamSpace s = testutil::coin_space();
    const RealPoly f = poly2({0.013, -1.442, 0.925, 2.072, 0.953, 0.085});
    const auto g = [&](double x, double y) {
        const std::vector<double> v = {x, y};
        return f.evaluate<double>(v);
    };
    EXPECT_NEAR(poly_integral_box(f, s, true), grid_mean(g, s, 800), 1e-6);
    EXPECT_NEAR(poly_integral_box(f, s, false), poly_integral_box(f, s, true) * box_volume(s), 1e-15);
}

TEST(Analysis, LpNormExactVsQuadrature) {
    const ParamSpace s = testutil::coin_space();
    const RealPoly f = poly2({0.013, -1.442, 0.925, 2.072, 0.953, 0.085});
    const double exact = poly_lp_norm(f, s, 0.5, 2.0);
    EXPECT_NEAR(exact, poly_lp_norm_quadrature(f, s, 0.5, 2.0), 1e-9);
    const auto sq = [&](double x, double y) {
        const std::vector<double> v = {x, y};
        const double d = f.evaluate<double>(v) - 0.5;
        return d * d;
    };
    EXPECT_NEAR(exact, std::sqrt(grid_mean(sq, s, 800) * box_volume(s)), 1e-6);
    // p = 1 and p = 3 against the grid as well.
    for (double p : {1.0, 3.0}) {
        const auto ap = [&](double x, double y) {
            const std::vector<double> v = {x, y};
            return std::pow(std::abs(f.evaluate<double>(v) - 0.5), p);
        };
        EXPECT_NEAR(poly_lp_norm(f, s, 0.5, p), std::pow(grid_mean(ap, s, 800) * box_volume(s), 1.0 / p), 1e-5);
    }
    EXPECT_THROW(poly_lp_norm(f, s, 0.5, 0.5), Error);
}

TEST(Analysis, MaxUpperBoundEnclosesGridMax) {
    const ParamSpace s = ParamSpace::from_doubles({"x", "y"}, {{-1.0, 1.0}, {-1.0, 2.0}});
    std::mt19937 gen(8);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> c(10);
        for (auto& v : c) v = u(gen);
        const RealPoly f = PolyTemplate(2, 3).polynomial(c);
        const MaxBound mb = poly_max_upper_bound(f, s, 1e-6);
        double grid = -1e300;
        for (int i = 0; i <= 300; ++i) {
            for (int j = 0; j <= 300; ++j) {
                const std::vector<double> v = {-1.0 + 2.0 * i / 300, -1.0 + 3.0 * j / 300};
                grid = std::max(grid, f.evaluate<double>(v));
            }
        }
        EXPECT_GE(mb.upper, grid - 1e-12);
        EXPECT_LE(mb.upper, grid + 1e-3);
        EXPECT_LE(mb.best_value, mb.upper);
    }
}

TEST(Analysis, SuperlevelExactVsMonteCarlo) {
    const ParamSpace s = testutil::coin_space();
    const RealPoly f = PolyTemplate(2, 1).polynomial(std::vector<double>{-0.035, -0.718, 1.063});
    const SuperlevelResult exact = superlevel_probability(f, s, 0.611);
    EXPECT_TRUE(exact.exact);
    // Monte Carlo with a quadratic term of weight zero forces the sampling path.
    RealPoly g = f;
    g.add_term({2, 0}, 1e-300);
    const SuperlevelResult mc = superlevel_probability(g, s, 0.611, 17, 400000);
    EXPECT_FALSE(mc.exact);
    EXPECT_NEAR(exact.probability, mc.probability, 4 * mc.half_width + 1e-4);
    // Closed form for the 1D case: P(2x > 1.5) on [0, 1].
    const ParamSpace line = ParamSpace::from_doubles({"x"}, {{0.0, 1.0}});
    EXPECT_NEAR(superlevel_probability(PolyTemplate(1, 1).polynomial(std::vector<double>{0.0, 2.0}), line, 1.5).probability, 0.25, 1e-15);
}

TEST(Analysis, SafeRegionCheck) {
    const ParamSpace s = testutil::coin_space();
    const PointFunction f = [](std::span<const double> x) { return testutil::coin_f(x); };
    const SafetyVerdict safe = safe_region_check(f, s, 0.85, 0.05, 0.05);
    EXPECT_EQ(safe.kind, SafetyVerdict::Kind::SafeWithGuarantee);
    EXPECT_EQ(safe.samples, 160u);
    const SafetyVerdict unsafe = safe_region_check(f, s, 0.6, 0.05, 0.05);
    EXPECT_EQ(unsafe.kind, SafetyVerdict::Kind::UnsafeWitness);
    EXPECT_GT(f(unsafe.witness), 0.6);
    const PointFunction nan = [](std::span<const double>) { return std::nan(""); };
    EXPECT_EQ(safe_region_check(nan, s, 0.5, 0.05, 0.05).kind, SafetyVerdict::Kind::Unknown);
}

TEST(Analysis, NearBetaMatchesFormula) {
    const ParamSpace s = testutil::coin_space();
    const PacPolynomial fit = make_fit(PolyTemplate(2, 2), {0.013, -1.442, 0.925, 2.072, 0.953, 0.085}, 0.01);
    const double x = box_volume(s);
    const double norm = poly_lp_norm(fit.polynomial(), s, 0.5, 2.0);
    const double want = std::sqrt(std::pow(0.01 * std::sqrt(0.95 * x) + norm, 2) + 0.05 * x * 0.25);
    const NearBetaVerdict v = near_beta_check(fit, s, 0.5, 0.05, 2.0, 1.0);
    EXPECT_NEAR(v.ub, want, 1e-12);
    EXPECT_EQ(v.holds, want < 0.05);
    EXPECT_THROW(near_beta_check(fit, s, 0.5, 0.05, 0.9, 1.0), Error);
}

TEST(Analysis, RewardBoundMatchesFormula) {
    const ParamSpace s = ParamSpace::from_doubles({"x"}, {{0.1, 0.5}});
    PacPolynomial fit;
    fit.tmpl = PolyTemplate(1, 1);
    fit.params = {"x"};
    fit.coeffs = {1.0, 2.0};
    fit.lambda = 0.05;
    // E[1 + 2x - 0.05] = 1.55 on [0.1, 0.5]; max = 1.95.
    const RewardBoundVerdict v = reward_expectation_bound(fit, s, 1.0);
    EXPECT_NEAR(v.integral, 1.55, 1e-12);
    EXPECT_NEAR(v.max_ub, 1.95, 1e-9);
    EXPECT_NEAR(v.lower_bound, 1.55 - 0.05 * 0.4 * 1.95, 1e-9);
    EXPECT_TRUE(v.holds);
    EXPECT_FALSE(reward_expectation_bound(fit, s, 2.0).holds);
}

TEST(Analysis, LinearSafetyNeedsDegreeOne) {
    const ParamSpace s = testutil::coin_space();
    const PacPolynomial fit = make_fit(PolyTemplate(2, 2), {0, 0, 0, 0.5, 0, 0}, 0.0);
    EXPECT_THROW(linear_safety_check(fit, s, 0.5), Error);
}

TEST(Analysis, TaylorOfGeometricSeries) {
    const auto x = RatFun::variable(1, 0);
    const RatFun one = RatFun::constant(1, Rational(1));
    const RatFun f = one / (one - x);
    const std::vector<Rational> zero = {Rational(0)};
    const MPoly t = taylor_polynomial(f, zero, 3);
    const auto xv = MPoly::variable(1, 0);
    const MPoly one_p = MPoly::constant(1, Rational(1));
    EXPECT_EQ(t, one_p + xv + xv.pow(2) + xv.pow(3));
    // Around 1/2: 2 + 4(x - 1/2) + 8(x - 1/2)^2.
    const std::vector<Rational> half = {Rational(1, 2)};
    const MPoly shift = xv - MPoly::constant(1, Rational(1, 2));
    EXPECT_EQ(taylor_polynomial(f, half, 2),
              MPoly::constant(1, Rational(2)) + shift.scaled(Rational(4)) + shift.pow(2).scaled(Rational(8)));
    const std::vector<Rational> pole = {Rational(1)};
    try {
        taylor_polynomial(f, pole, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::CenterSingular);
    }
}

TEST(Analysis, L2DistanceMonteCarlo) {
    const ParamSpace s = ParamSpace::from_doubles({"x"}, {{0.0, 1.0}});
    const PointFunction f = [](std::span<const double> x) { return x[0]; };
    const PointFunction zero = [](std::span<const double>) { return 0.0; };
    const L2Estimate e = l2_distance_mc(f, zero, s, 200000, 4);
    EXPECT_NEAR(e.value, 1.0 / std::sqrt(3.0), 4 * e.std_error + 1e-4);
    EXPECT_GT(e.std_error, 0.0);
}
