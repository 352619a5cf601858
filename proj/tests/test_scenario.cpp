#include <gtest/gtest.h>

#include <cmath>

#include "parampac/error.hpp"
#include "parampac/oracle.hpp"
#include "parampac/parser.hpp"
#include "parampac/scenario.hpp"
#include "parampac/serialize.hpp"
#include "test_util.hpp"

using namespace parampac;

TEST(Scenario, SampleCountsFromTheBound) {
    EXPECT_EQ(sample_count(0.05, 0.05, 1), 160u);
    EXPECT_EQ(sample_count(0.05, 0.05, 4), 280u);
    EXPECT_EQ(sample_count(0.01, 0.001, 4), 2182u);
    // Direct evaluation of ceil(2/eps (ln 1/eta + m)) for a few more inputs.
    for (double eps : {0.1, 0.02, 0.5}) {
        for (double eta : {0.2, 0.01}) {
            for (std::size_t m : {1u, 3u, 10u}) {
                const double raw = 2.0 / eps * (std::log(1.0 / eta) + static_cast<double>(m));
                EXPECT_EQ(sample_count(eps, eta, m), static_cast<std::size_t>(std::ceil(raw - 1e-9)));
            }
        }
    }
    EXPECT_THROW(sample_count(0.0, 0.05, 1), Error);
    EXPECT_THROW(sample_count(0.05, 1.5, 1), Error);
    EXPECT_THROW(sample_count(0.05, 0.05, 0), Error);
}

TEST(Scenario, TemplateOrder) {
    const PolyTemplate t(2, 2);
    ASSERT_EQ(t.size(), 6u);
    const std::vector<Exponent> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    EXPECT_EQ(t.monomials(), want);
    EXPECT_EQ(PolyTemplate(3, 4).size(), binomial(7, 3));
    const std::vector<double> x = {2.0, 3.0};
    EXPECT_EQ(t.evaluate_monomials(x), (std::vector<double>{1, 2, 3, 4, 6, 9}));
}

TEST(Scenario, DrawsArePrefixStableAndInTheBox) {
    const ParamSpace s = testutil::coin_space();
    const auto big = draw_samples(s, 100, 3);
    const auto small = draw_samples(s, 10, 3);
    for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i], big[i]);
    for (const auto& x : big) EXPECT_TRUE(s.contains(x));
    EXPECT_NE(draw_samples(s, 10, 4), small);
    EXPECT_THROW(draw_samples(s, 0, 3), Error);
}

TEST(Scenario, ExactPolynomialIsRecovered) {
    const ParamSpace s = testutil::coin_space();
    const PointFunction f = [](std::span<const double> x) { return 0.3 - 2 * x[0] + x[0] * x[1] + 0.5 * x[1] * x[1]; };
    const PolyTemplate t(2, 2);
    const auto pts = draw_samples(s, sample_count(0.05, 0.05, t.size() + 1), 1);
    const PacPolynomial fit = fit_pac(evaluate_samples(f, pts, 1, "poly"), t, s, 0.05, 0.05);
    EXPECT_LT(fit.lambda, 1e-9);
    const std::vector<double> want = {0.3, -2.0, 0.0, 0.0, 1.0, 0.5};
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(fit.coeffs[i], want[i], 1e-6);
}

TEST(Scenario, LambdaIsTheMaxResidual) {
    const ParamSpace s = testutil::coin_space();
    const PolyTemplate t(2, 1);
    const auto pts = draw_samples(s, 280, 7);
    const PointFunction f = [](std::span<const double> x) { return testutil::coin_f(x); };
    const SampleSet set = evaluate_samples(f, pts, 7, "coin");
    const PacPolynomial fit = fit_pac(set, t, s, 0.05, 0.05);
    double worst = 0;
    for (std::size_t i = 0; i < set.size(); ++i) worst = std::max(worst, std::abs(fit(set.points[i]) - set.values[i]));
    EXPECT_NEAR(fit.lambda, worst, 1e-12);
    EXPECT_GE(fit.lambda, worst);
}

TEST(Scenario, MinimaxIsOptimalInOneDimension) {
    // Best linear approximation of x^2 on [0, 1] in sup norm has error 1/8;
    // on a dense sample the LP value must approach it from below.
    const ParamSpace s = ParamSpace::from_doubles({"x"}, {{0.0, 1.0}});
    const PointFunction f = [](std::span<const double> x) { return x[0] * x[0]; };
    const auto pts = draw_samples(s, 2000, 5);
    const PacPolynomial fit = fit_pac(evaluate_samples(f, pts, 5, "sq"), PolyTemplate(1, 1), s, 0.05, 0.05);
    EXPECT_LE(fit.lambda, 0.125 + 1e-12);
    EXPECT_GT(fit.lambda, 0.12);
    EXPECT_NEAR(fit.coeffs[1], 1.0, 1e-2);
}

TEST(Scenario, TooFewSamples) {
    const ParamSpace s = testutil::coin_space();
    const PointFunction f = [](std::span<const double> x) { return x[0]; };
    const SampleSet set = evaluate_samples(f, draw_samples(s, 50, 1), 1, "x");
    try {
        fit_pac(set, PolyTemplate(2, 1), s, 0.05, 0.05);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TooFewSamples);
    }
    FitOptions opt;
    opt.allow_unsound = true;
    EXPECT_NO_THROW(fit_pac(set, PolyTemplate(2, 1), s, 0.05, 0.05, opt));
}

TEST(Scenario, ThreadCountDoesNotChangeResults) {
    const auto model = std::make_shared<const PDtmrm>(load_model(testutil::model_path("coin.pm")));
    const PointFunction f = make_model_oracle(model, parse_formula(R"(P=? [ F "checked" ])"));
    const auto pts = draw_samples(model->chain().space(), 300, 9);
    const SampleSet one = evaluate_samples(f, pts, 9, "coin", 1);
    const SampleSet four = evaluate_samples(f, pts, 9, "coin", 4);
    EXPECT_EQ(one.values, four.values);
}

TEST(Scenario, OracleFailureReportsFirstIndex) {
    const ParamSpace s = ParamSpace::from_doubles({"x"}, {{0.0, 1.0}});
    std::vector<std::vector<double>> pts = {{0.1}, {0.2}, {0.9}, {0.3}, {0.95}};
    const PointFunction f = [](std::span<const double> x) {
        if (x[0] > 0.5) throw Error(Errc::DivisionByZero, "boom");
        return x[0];
    };
    try {
        evaluate_samples(f, pts, 1, "f", 3);
        FAIL();
    } catch (const OracleFailure& e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

TEST(Scenario, JsonRoundTrip) {
    const ParamSpace s = testutil::coin_space();
    const PointFunction f = [](std::span<const double> x) { return testutil::coin_f(x); };
    const PolyTemplate t(2, 2);
    const auto pts = draw_samples(s, sample_count(0.05, 0.05, t.size() + 1), 3);
    const PacPolynomial fit = fit_pac(evaluate_samples(f, pts, 3, "coin"), t, s, 0.05, 0.05);
    const PacPolynomial back = pac_from_json(to_json(fit));
    EXPECT_EQ(back.tmpl, fit.tmpl);
    EXPECT_EQ(back.coeffs, fit.coeffs);
    EXPECT_EQ(back.lambda, fit.lambda);
    EXPECT_EQ(back.samples, fit.samples);
    EXPECT_EQ(back.seed, fit.seed);
    EXPECT_EQ(to_json(back), to_json(fit));
}
