#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "parampac/model.hpp"
#include "parampac/ratfun.hpp"

namespace parampac {

struct ElimOptions {
    std::size_t max_states = 64;
    // Explicit elimination order (state indices); empty selects the
    // fewest-in*out-neighbours heuristic with ties broken by state index.
    std::vector<std::size_t> order;
};

/// Exact reachability probability Pr_init(F target) as a rational function of
/// the parameters, by state elimination. Throws Error(TooLarge |
/// SymbolicZeroDenominator).
RatFun eliminate_reachability(const PDtmc& model, const StateSet& target,
                              const ElimOptions& options = {});

/// Exact expected reward until reaching target. Requires the target to be
/// reached almost surely at every evaluation; throws Error(NotAlmostSure |
/// MissingReward | TooLarge | SymbolicZeroDenominator).
RatFun eliminate_reward(const PDtmrm& model, const StateSet& target,
                        const std::string& reward_name, const ElimOptions& options = {});

using PointFunction = std::function<double(std::span<const double>)>;

/// Randomized identity test: |g(x) - oracle(x)| <= tol at n_points uniform box
/// points drawn from `seed`. Points where g is undefined count as disagreement.
bool ratfun_agrees(const RatFun& g, const PointFunction& oracle, const ParamSpace& space,
                   std::size_t n_points, double tol, std::uint64_t seed = 0xC0FFEE);

}  // namespace parampac
