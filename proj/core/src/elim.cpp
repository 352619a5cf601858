#include "parampac/elim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "parampac/error.hpp"
#include "parampac/mc.hpp"
#include "parampac/rng.hpp"

namespace parampac {

namespace {

// Working graph for elimination. Node `sink` stands for every state that
// reaches the target almost surely (target states included).
struct ElimGraph {
    std::size_t nvars = 0;
    std::size_t sink = 0;
    std::vector<std::map<std::size_t, RatFun>> out;
    std::vector<std::set<std::size_t>> in;
    std::vector<RatFun> reward;  // expected reward collected per visit
    std::vector<bool> alive;

    void add(std::size_t u, std::size_t w, const RatFun& f) {
        if (f.is_zero()) return;
        auto it = out[u].find(w);
        if (it == out[u].end()) {
            out[u].emplace(w, f);
            in[w].insert(u);
            return;
        }
        it->second = it->second + f;
        if (it->second.is_zero()) {
            out[u].erase(it);
            in[w].erase(u);
        }
    }

    RatFun self_loop(std::size_t v) const {
        auto it = out[v].find(v);
        return it == out[v].end() ? RatFun(nvars) : it->second;
    }

    std::size_t cost(std::size_t v) const {
        const std::size_t ins = in[v].size() - (in[v].count(v) ? 1 : 0);
        const std::size_t outs = out[v].size() - (out[v].count(v) ? 1 : 0);
        return ins * outs;
    }

    RatFun stay_inverse(std::size_t v) const {
        const RatFun leave = RatFun::constant(nvars, 1) - self_loop(v);
        if (leave.is_zero()) {
            throw Error(Errc::SymbolicZeroDenominator,
                        "state " + std::to_string(v) + " has a self-loop identically 1");
        }
        return RatFun::constant(nvars, 1) / leave;
    }

    void eliminate(std::size_t v) {
        const RatFun stay = stay_inverse(v);
        std::vector<std::pair<std::size_t, RatFun>> succ;
        for (const auto& [w, f] : out[v]) {
            if (w != v) succ.emplace_back(w, f * stay);
        }
        const RatFun r = reward[v] * stay;
        const std::vector<std::size_t> preds(in[v].begin(), in[v].end());
        for (std::size_t u : preds) {
            if (u == v) continue;
            const RatFun a = out[u].at(v);
            out[u].erase(v);
            for (const auto& [w, g] : succ) add(u, w, a * g);
            if (!r.is_zero()) reward[u] = reward[u] + a * r;
        }
        for (const auto& [w, g] : out[v]) in[w].erase(v);
        out[v].clear();
        in[v].clear();
        alive[v] = false;
    }

    void eliminate_all_but(std::size_t keep, const std::vector<std::size_t>& order) {
        if (!order.empty()) {
            for (std::size_t v : order) {
                if (v < alive.size() && v != sink && v != keep && alive[v]) eliminate(v);
            }
        }
        for (;;) {
            std::size_t best = sink;
            std::size_t best_cost = 0;
            for (std::size_t v = 0; v < sink; ++v) {
                if (!alive[v] || v == keep) continue;
                const std::size_t c = cost(v);
                if (best == sink || c < best_cost) {
                    best = v;
                    best_cost = c;
                }
            }
            if (best == sink) break;
            eliminate(best);
        }
    }
};

std::vector<std::vector<std::size_t>> support(const PDtmc& model) {
    std::vector<std::vector<std::size_t>> succ(model.num_states());
    for (std::size_t s = 0; s < model.num_states(); ++s) {
        for (const auto& t : model.row(s)) {
            if (!t.weight.is_constant_zero()) succ[s].push_back(t.target);
        }
    }
    return succ;
}

void check_size(const PDtmc& model, const ElimOptions& options) {
    if (model.num_states() > options.max_states) {
        throw Error(Errc::TooLarge, "model has " + std::to_string(model.num_states()) +
                                        " states, elimination is capped at " +
                                        std::to_string(options.max_states));
    }
}

// Rewards are stored as doubles; read them back as the decimal the user wrote.
Rational exact(double x) { return rational_from_decimal(format_double(x)); }

const RewardStructure& reward_by_name(const PDtmrm& model, const std::string& name) {
    const RewardMap& rw = model.rewards();
    if (rw.empty()) throw Error(Errc::MissingReward, "model has no reward structure");
    if (name.empty()) {
        if (rw.size() != 1) throw Error(Errc::MissingReward, "model has several reward structures; name one");
        return rw.begin()->second;
    }
    auto it = rw.find(name);
    if (it == rw.end()) throw Error(Errc::MissingReward, "unknown reward structure '" + name + "'");
    return it->second;
}

}  // namespace

RatFun eliminate_reachability(const PDtmc& model, const StateSet& target, const ElimOptions& options) {
    check_size(model, options);
    const std::size_t n = model.num_states();
    const std::size_t nv = model.space().dim();
    const auto succ = support(model);
    const StateSet all(n, true);
    const StateSet pos = graph::prob_greater0(succ, all, target);
    const StateSet one = graph::prob1(succ, all, target);
    if (one[model.init()]) return RatFun::constant(nv, 1);
    if (!pos[model.init()]) return RatFun(nv);

    ElimGraph g;
    g.nvars = nv;
    g.sink = n;
    g.out.resize(n + 1);
    g.in.resize(n + 1);
    g.reward.assign(n + 1, RatFun(nv));
    g.alive.assign(n + 1, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (!pos[s] || one[s]) continue;
        g.alive[s] = true;
        for (const auto& t : model.row(s)) {
            if (t.weight.is_constant_zero()) continue;
            if (one[t.target]) g.add(s, g.sink, t.weight.to_ratfun(nv));
            else if (pos[t.target]) g.add(s, t.target, t.weight.to_ratfun(nv));
        }
    }
    const std::size_t init = model.init();
    g.eliminate_all_but(init, options.order);
    auto it = g.out[init].find(g.sink);
    if (it == g.out[init].end()) return RatFun(nv);
    return it->second * g.stay_inverse(init);
}

RatFun eliminate_reward(const PDtmrm& model, const StateSet& target, const std::string& reward_name,
                        const ElimOptions& options) {
    const PDtmc& chain = model.chain();
    const RewardStructure& rw = reward_by_name(model, reward_name);
    const std::size_t nv = chain.space().dim();
    const RatFun reach = eliminate_reachability(chain, target, options);
    if (!reach.equivalent(RatFun::constant(nv, 1))) {
        throw Error(Errc::NotAlmostSure, "target is not reached with probability 1: Pr = " +
                                             to_string(reach, chain.space().names()));
    }
    const std::size_t n = chain.num_states();
    const std::size_t init = chain.init();
    if (target[init]) return RatFun(nv);

    // Only states reachable from init without passing the target matter.
    const auto succ = support(chain);
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{init};
    seen[init] = true;
    while (!stack.empty()) {
        const std::size_t s = stack.back();
        stack.pop_back();
        if (target[s]) continue;
        for (std::size_t t : succ[s]) {
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }

    ElimGraph g;
    g.nvars = nv;
    g.sink = n;
    g.out.resize(n + 1);
    g.in.resize(n + 1);
    g.reward.assign(n + 1, RatFun(nv));
    g.alive.assign(n + 1, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (!seen[s] || target[s]) continue;
        g.alive[s] = true;
        RatFun r = RatFun::constant(nv, exact(rw.state[s]));
        for (const auto& t : chain.row(s)) {
            if (t.weight.is_constant_zero()) continue;
            const RatFun w = t.weight.to_ratfun(nv);
            auto e = rw.edge.find({s, t.target});
            if (e != rw.edge.end() && e->second != 0.0) r = r + w * RatFun::constant(nv, exact(e->second));
            g.add(s, target[t.target] ? g.sink : t.target, w);
        }
        g.reward[s] = r;
    }
    g.eliminate_all_but(init, options.order);
    return g.reward[init] * g.stay_inverse(init);
}

bool ratfun_agrees(const RatFun& g, const PointFunction& oracle, const ParamSpace& space,
                   std::size_t n_points, double tol, std::uint64_t seed) {
    Xoshiro256ss rng(seed);
    std::vector<double> x(space.dim());
    for (std::size_t k = 0; k < n_points; ++k) {
        for (std::size_t i = 0; i < space.dim(); ++i) {
            x[i] = space.lo(i) + rng.uniform() * (space.hi(i) - space.lo(i));
        }
        try {
            const double a = g.evaluate(x);
            const double b = oracle(x);
            if (!(std::abs(a - b) <= tol)) return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

}  // namespace parampac
