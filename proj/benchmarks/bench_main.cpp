#include <benchmark/benchmark.h>

#include <memory>

#include "parampac/elim.hpp"
#include "parampac/mc.hpp"
#include "parampac/oracle.hpp"
#include "parampac/parser.hpp"
#include "parampac/scenario.hpp"

using namespace parampac;

namespace {

const std::shared_ptr<const PDtmrm>& coin() {
    static const auto m = std::make_shared<const PDtmrm>(load_model(std::string(PARAMPAC_BENCH_MODELS) + "/coin.pm"));
    return m;
}

// Parametric random walk on a line of n states; right with p, left with 1-p.
PDtmrm walk(std::size_t n) {
    std::string text = "param p in [0.3, 0.7];\nstates";
    for (std::size_t s = 0; s < n; ++s) text += (s ? ", s" : " s") + std::to_string(s) + (s == 1 ? " init" : "");
    text += ";\nlabel \"goal\" = s" + std::to_string(n - 1) + ";\n";
    text += "trans s0 -> s0 : 1;\ntrans s" + std::to_string(n - 1) + " -> s" + std::to_string(n - 1) + " : 1;\n";
    for (std::size_t s = 1; s + 1 < n; ++s) {
        text += "trans s" + std::to_string(s) + " -> s" + std::to_string(s + 1) + " : p, s" + std::to_string(s - 1) +
                " : 1 - p;\n";
    }
    return parse_model(text);
}

void BM_CheckCoin(benchmark::State& state) {
    const Formula phi = parse_formula(R"(P=? [ F "checked" ])");
    const std::vector<double> x = {0.05, 0.8};
    const Dtmc d = instantiate(*coin(), x);
    for (auto _ : state) benchmark::DoNotOptimize(check(d, *phi).value());
}
BENCHMARK(BM_CheckCoin);

void BM_CheckWalk(benchmark::State& state) {
    const PDtmrm m = walk(static_cast<std::size_t>(state.range(0)));
    const Formula phi = parse_formula(R"(P=? [ F "goal" ])");
    const std::vector<double> x = {0.55};
    const Dtmc d = instantiate(m, x);
    for (auto _ : state) benchmark::DoNotOptimize(check(d, *phi).value());
}
BENCHMARK(BM_CheckWalk)->Arg(16)->Arg(64)->Arg(256);

void BM_EliminateWalk(benchmark::State& state) {
    const PDtmrm m = walk(static_cast<std::size_t>(state.range(0)));
    const StateSet goal = m.chain().labels().at("goal");
    for (auto _ : state) benchmark::DoNotOptimize(eliminate_reachability(m.chain(), goal).num().size());
}
BENCHMARK(BM_EliminateWalk)->Arg(4)->Arg(8)->Arg(12);

void BM_FitCoin(benchmark::State& state) {
    const unsigned degree = static_cast<unsigned>(state.range(0));
    const ParamSpace& s = coin()->chain().space();
    const PolyTemplate t(2, degree);
    const PointFunction f = make_model_oracle(coin(), parse_formula(R"(P=? [ F "checked" ])"));
    const SampleSet set = evaluate_samples(f, draw_samples(s, sample_count(0.05, 0.05, t.size() + 1), 1), 1, "coin");
    for (auto _ : state) benchmark::DoNotOptimize(fit_pac(set, t, s, 0.05, 0.05).lambda);
    state.counters["samples"] = static_cast<double>(set.size());
}
BENCHMARK(BM_FitCoin)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_SampleOracle(benchmark::State& state) {
    const ParamSpace& s = coin()->chain().space();
    const PointFunction f = make_model_oracle(coin(), parse_formula(R"(P=? [ F "checked" ])"));
    const auto pts = draw_samples(s, 1000, 1);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_samples(f, pts, 1, "coin", 1).values.back());
}
BENCHMARK(BM_SampleOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
