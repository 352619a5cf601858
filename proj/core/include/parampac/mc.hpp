#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "parampac/formula.hpp"
#include "parampac/model.hpp"

namespace parampac {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Either the satisfaction set of a Boolean state formula or the value of a
/// top-level `=?` query at the initial state (+infinity for unreachable targets).
struct CheckResult {
    std::variant<StateSet, double> payload;

    bool is_value() const { return std::holds_alternative<double>(payload); }
    double value() const { return std::get<double>(payload); }
    const StateSet& sat_set() const { return std::get<StateSet>(payload); }
};

/// Model checks a formula. Boolean formulas yield their satisfaction set,
/// queries their value at the initial state. Throws Error(MissingReward).
CheckResult check(const Dtmc& model, const StateFormula& phi);

/// Satisfaction set of a state formula (queries are rejected).
StateSet sat(const Dtmc& model, const StateFormula& phi);

/// Per-state probability of the path formula.
std::vector<double> path_probabilities(const Dtmc& model, const PathFormula& psi);

/// Pr_s(A U B) for every state s. States with probability 0 or 1 are found by
/// graph search; the rest solve (I - P_uu) x = b by dense LU.
std::vector<double> prob_until(const Dtmc& model, const StateSet& a, const StateSet& b);
std::vector<double> prob_bounded_until(const Dtmc& model, const StateSet& a, const StateSet& b,
                                       unsigned k);
std::vector<double> prob_next(const Dtmc& model, const StateSet& b);

/// Expected reward accumulated until the first visit to T; +infinity where T is
/// not reached almost surely. Throws Error(MissingReward).
std::vector<double> expected_reward_F(const Dtmc& model, const StateSet& target,
                                      const std::string& reward_name);

namespace graph {
// States that can reach b while staying inside a (Pr > 0).
StateSet prob_greater0(const std::vector<std::vector<std::size_t>>& succ, const StateSet& a,
                       const StateSet& b);
// States with Pr(a U b) = 1.
StateSet prob1(const std::vector<std::vector<std::size_t>>& succ, const StateSet& a,
               const StateSet& b);
}  // namespace graph

}  // namespace parampac
