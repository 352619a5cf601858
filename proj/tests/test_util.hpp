#pragma once

#include <cmath>
#include <span>
#include <string>

#include "parampac/param_space.hpp"
#include "parampac/parser.hpp"

namespace testutil {

inline std::string model_path(const std::string& name) {
    return std::string(PARAMPAC_TEST_MODELS) + "/" + name;
}

// Closed form of the coin reachability function, written out by hand.
inline double coin_f(double p, double q) { return q * q / (q + 2 * p - 2 * p * q); }

inline double coin_f(std::span<const double> x) { return coin_f(x[0], x[1]); }

inline parampac::ParamSpace coin_space() {
    return parampac::ParamSpace::from_doubles({"p", "q"}, {{0.01, 0.09}, {0.25, 0.8}});
}

}  // namespace testutil
