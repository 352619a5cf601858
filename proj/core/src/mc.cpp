#include "parampac/mc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>

#include "parampac/error.hpp"

namespace parampac {

namespace {

std::vector<std::vector<std::size_t>> successors(const Dtmc& m) {
    std::vector<std::vector<std::size_t>> succ(m.num_states());
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        for (const auto& t : m.rows[s]) {
            if (t.weight > 0.0) succ[s].push_back(t.target);
        }
    }
    return succ;
}

StateSet all_states(std::size_t n) { return StateSet(n, true); }

// Solves x_u = sum_{v in u} P(u,v) x_v + rhs_u over the states flagged in `unknown`.
std::vector<double> solve_block(const Dtmc& m, const StateSet& unknown, const std::vector<double>& rhs) {
    const std::size_t n = m.num_states();
    std::vector<std::ptrdiff_t> idx(n, -1);
    std::ptrdiff_t k = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (unknown[s]) idx[s] = k++;
    }
    std::vector<double> x(n, 0.0);
    if (k == 0) return x;
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd b(k);
    for (std::size_t s = 0; s < n; ++s) {
        if (idx[s] < 0) continue;
        b(idx[s]) = rhs[s];
        for (const auto& t : m.rows[s]) {
            if (idx[t.target] >= 0) a(idx[s], idx[t.target]) -= t.weight;
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const auto diag = lu.matrixLU().diagonal().cwiseAbs();
    if (diag.minCoeff() <= 1e-14 * std::max(1.0, diag.maxCoeff())) {
        throw Error(Errc::SingularSystem, "linear system is singular after qualitative analysis");
    }
    const Eigen::VectorXd sol = lu.solve(b);
    for (std::size_t s = 0; s < n; ++s) {
        if (idx[s] >= 0) x[s] = sol(idx[s]);
    }
    return x;
}

const RewardStructure& find_reward(const Dtmc& m, const std::string& name) {
    if (!m.rewards || m.rewards->empty()) throw Error(Errc::MissingReward, "model has no reward structure");
    if (name.empty()) {
        if (m.rewards->size() != 1) {
            throw Error(Errc::MissingReward, "model has several reward structures; name one");
        }
        return m.rewards->begin()->second;
    }
    auto it = m.rewards->find(name);
    if (it == m.rewards->end()) throw Error(Errc::MissingReward, "unknown reward structure '" + name + "'");
    return it->second;
}

}  // namespace

namespace graph {

StateSet prob_greater0(const std::vector<std::vector<std::size_t>>& succ, const StateSet& a,
                       const StateSet& b) {
    const std::size_t n = succ.size();
    std::vector<std::vector<std::size_t>> pred(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t : succ[s]) pred[t].push_back(s);
    }
    StateSet reached(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (b[s]) {
            reached[s] = true;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const std::size_t t = queue.front();
        queue.pop_front();
        for (std::size_t s : pred[t]) {
            if (!reached[s] && a[s]) {
                reached[s] = true;
                queue.push_back(s);
            }
        }
    }
    return reached;
}

StateSet prob1(const std::vector<std::vector<std::size_t>>& succ, const StateSet& a,
               const StateSet& b) {
    const std::size_t n = succ.size();
    const StateSet pos = prob_greater0(succ, a, b);
    StateSet zero(n), a_not_b(n);
    for (std::size_t s = 0; s < n; ++s) {
        zero[s] = !pos[s];
        a_not_b[s] = a[s] && !b[s];
    }
    // Pr < 1 exactly where a probability-0 state is reachable through a \ b.
    const StateSet below1 = prob_greater0(succ, a_not_b, zero);
    StateSet one(n);
    for (std::size_t s = 0; s < n; ++s) one[s] = !below1[s];
    return one;
}

}  // namespace graph

std::vector<double> prob_until(const Dtmc& m, const StateSet& a, const StateSet& b) {
    const std::size_t n = m.num_states();
    const auto succ = successors(m);
    const StateSet pos = graph::prob_greater0(succ, a, b);
    const StateSet one = graph::prob1(succ, a, b);
    StateSet unknown(n);
    std::vector<double> rhs(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        unknown[s] = pos[s] && !one[s];
        if (!unknown[s]) continue;
        for (const auto& t : m.rows[s]) {
            if (one[t.target]) rhs[s] += t.weight;
        }
    }
    std::vector<double> x = solve_block(m, unknown, rhs);
    for (std::size_t s = 0; s < n; ++s) {
        if (one[s]) x[s] = 1.0;
        else if (!pos[s]) x[s] = 0.0;
        else x[s] = std::clamp(x[s], 0.0, 1.0);
    }
    return x;
}

std::vector<double> prob_bounded_until(const Dtmc& m, const StateSet& a, const StateSet& b, unsigned k) {
    const std::size_t n = m.num_states();
    std::vector<double> x(n), next(n);
    for (std::size_t s = 0; s < n; ++s) x[s] = b[s] ? 1.0 : 0.0;
    for (unsigned step = 0; step < k; ++step) {
        for (std::size_t s = 0; s < n; ++s) {
            if (b[s]) {
                next[s] = 1.0;
            } else if (!a[s]) {
                next[s] = 0.0;
            } else {
                double v = 0.0;
                for (const auto& t : m.rows[s]) v += t.weight * x[t.target];
                next[s] = v;
            }
        }
        x.swap(next);
    }
    return x;
}

std::vector<double> prob_next(const Dtmc& m, const StateSet& b) {
    std::vector<double> x(m.num_states(), 0.0);
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        for (const auto& t : m.rows[s]) {
            if (b[t.target]) x[s] += t.weight;
        }
    }
    return x;
}

std::vector<double> expected_reward_F(const Dtmc& m, const StateSet& target, const std::string& reward_name) {
    const RewardStructure& rw = find_reward(m, reward_name);
    const std::size_t n = m.num_states();
    const StateSet one = graph::prob1(successors(m), all_states(n), target);
    StateSet unknown(n);
    std::vector<double> rhs(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        unknown[s] = one[s] && !target[s];
        if (!unknown[s]) continue;
        rhs[s] = rw.state[s];
        for (const auto& t : m.rows[s]) {
            auto it = rw.edge.find({s, t.target});
            if (it != rw.edge.end()) rhs[s] += t.weight * it->second;
        }
    }
    std::vector<double> x = solve_block(m, unknown, rhs);
    for (std::size_t s = 0; s < n; ++s) {
        if (target[s]) x[s] = 0.0;
        else if (!one[s]) x[s] = kInfinity;
        else x[s] = std::max(x[s], 0.0);
    }
    return x;
}

std::vector<double> path_probabilities(const Dtmc& m, const PathFormula& psi) {
    switch (psi.kind) {
        case PathFormula::Kind::Next: return prob_next(m, sat(m, *psi.right));
        case PathFormula::Kind::Until: return prob_until(m, sat(m, *psi.left), sat(m, *psi.right));
        case PathFormula::Kind::BoundedUntil:
            return prob_bounded_until(m, sat(m, *psi.left), sat(m, *psi.right), psi.steps);
    }
    return {};
}

StateSet sat(const Dtmc& m, const StateFormula& phi) {
    const std::size_t n = m.num_states();
    switch (phi.kind) {
        case StateFormula::Kind::True: return all_states(n);
        case StateFormula::Kind::Atom: {
            if (!m.labels || !m.labels->count(phi.label)) {
                throw Error(Errc::Semantic, "unknown label \"" + phi.label + "\"");
            }
            return m.labels->at(phi.label);
        }
        case StateFormula::Kind::Not: {
            StateSet s = sat(m, *phi.left);
            s.flip();
            return s;
        }
        case StateFormula::Kind::And: {
            StateSet l = sat(m, *phi.left);
            const StateSet r = sat(m, *phi.right);
            for (std::size_t s = 0; s < n; ++s) l[s] = l[s] && r[s];
            return l;
        }
        case StateFormula::Kind::Prob:
        case StateFormula::Kind::Reward: {
            if (!phi.bound) throw Error(Errc::Semantic, "a =? query cannot be nested in a formula");
            const std::vector<double> v = phi.kind == StateFormula::Kind::Prob
                                              ? path_probabilities(m, *phi.path)
                                              : expected_reward_F(m, sat(m, *phi.left), phi.reward_name);
            StateSet out(n);
            for (std::size_t s = 0; s < n; ++s) out[s] = compare(v[s], phi.bound->cmp, phi.bound->value);
            return out;
        }
    }
    return {};
}

CheckResult check(const Dtmc& m, const StateFormula& phi) {
    if (!phi.is_query()) return {sat(m, phi)};
    if (phi.kind == StateFormula::Kind::Prob) return {path_probabilities(m, *phi.path)[m.init]};
    return {expected_reward_F(m, sat(m, *phi.left), phi.reward_name)[m.init]};
}

}  // namespace parampac
