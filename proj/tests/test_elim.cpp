#include <gtest/gtest.h>

#include <random>

#include "parampac/elim.hpp"
#include "parampac/error.hpp"
#include "parampac/mc.hpp"
#include "parampac/parser.hpp"
#include "test_util.hpp"

using namespace parampac;

TEST(Elimination, CoinMatchesClosedForm) {
    const PDtmrm coin = load_model(testutil::model_path("coin.pm"));
    const RatFun f = eliminate_reachability(coin.chain(), coin.chain().labels().at("checked"));
    const auto p = RatFun::variable(2, 0);
    const auto q = RatFun::variable(2, 1);
    const RatFun two = RatFun::constant(2, Rational(2));
    EXPECT_TRUE(f.equivalent(q * q / (q + two * p - two * p * q)));
    EXPECT_TRUE(ratfun_agrees(f, [](std::span<const double> x) { return testutil::coin_f(x); },
                              coin.chain().space(), 100, 1e-12));
}

TEST(Elimination, OrderDoesNotChangeTheFunction) {
    const PDtmrm coin = load_model(testutil::model_path("coin.pm"));
    const StateSet t = coin.chain().labels().at("checked");
    const RatFun a = eliminate_reachability(coin.chain(), t);
    ElimOptions opt;
    opt.order = {3, 1, 4};
    const RatFun b = eliminate_reachability(coin.chain(), t, opt);
    EXPECT_TRUE(a.equivalent(b));
}

TEST(Elimination, GeometricReward) {
    const PDtmrm geo = load_model(testutil::model_path("geo.pm"));
    const RatFun r = eliminate_reward(geo, geo.chain().labels().at("done"), "steps");
    const auto x = RatFun::variable(1, 0);
    const RatFun one = RatFun::constant(1, Rational(1));
    EXPECT_TRUE(r.equivalent(one / (one - x)));
}

TEST(Elimination, AgreesWithModelCheckerOnRandomChains) {
    std::mt19937 gen(21);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int rep = 0; rep < 15; ++rep) {
        // Chain over p, q with parametric branching chosen at random per state.
        const std::size_t n = 6;
        std::string text = "param p in [0.1, 0.4]; param q in [0.2, 0.6];\nstates";
        for (std::size_t s = 0; s < n; ++s) text += (s ? ", s" : " s") + std::to_string(s) + (s == 0 ? " init" : "");
        text += ";\nlabel \"t\" = s" + std::to_string(n - 1) + ";\n";
        std::uniform_int_distribution<std::size_t> tgt(0, n - 1);
        for (std::size_t s = 0; s < n; ++s) {
            const std::string me = "s" + std::to_string(s);
            if (s == n - 1 || s == n - 2) {
                text += "trans " + me + " -> " + me + " : 1;\n";
                continue;
            }
            std::size_t a = tgt(gen), b = tgt(gen);
            if (a == b) b = (b + 1) % n;
            const char* w[] = {"p", "q", "p*q", "1/2"};
            const std::string wa = w[pick(gen)];
            text += "trans " + me + " -> s" + std::to_string(a) + " : " + wa + ", s" + std::to_string(b) +
                    " : 1 - " + wa + ";\n";
        }
        SCOPED_TRACE(text);
        const PDtmrm m = parse_model(text);
        const StateSet t = m.chain().labels().at("t");
        const RatFun f = eliminate_reachability(m.chain(), t);
        const PointFunction mc = [&](std::span<const double> x) {
            return prob_until(instantiate(m, x), StateSet(n, true), t)[0];
        };
        EXPECT_TRUE(ratfun_agrees(f, mc, m.chain().space(), 50, 1e-9, 99));
    }
}

TEST(Elimination, RewardRequiresAlmostSureReachability) {
    const PDtmrm m = parse_model(R"(param p in [0.1, 0.9];
states a init, b, c;
label "t" = b;
trans a -> b : p, c : 1 - p;
trans b -> b : 1;
trans c -> c : 1;
reward "r" { state a : 1; })");
    try {
        eliminate_reward(m, m.chain().labels().at("t"), "r");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotAlmostSure);
    }
    EXPECT_THROW(eliminate_reward(m, m.chain().labels().at("t"), "missing"), Error);
}

TEST(Elimination, TooLarge) {
    const PDtmrm coin = load_model(testutil::model_path("coin.pm"));
    ElimOptions opt;
    opt.max_states = 2;
    try {
        eliminate_reachability(coin.chain(), coin.chain().labels().at("checked"), opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TooLarge);
    }
}

TEST(Elimination, TrivialTargets) {
    const PDtmrm coin = load_model(testutil::model_path("coin.pm"));
    const StateSet none(5, false);
    StateSet init(5, false);
    init[0] = true;
    EXPECT_TRUE(eliminate_reachability(coin.chain(), none).is_zero());
    EXPECT_TRUE(eliminate_reachability(coin.chain(), init).equivalent(RatFun::constant(2, Rational(1))));
}
