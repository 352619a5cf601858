#pragma once

#include <string>
#include <string_view>

#include "parampac/analysis.hpp"
#include "parampac/scenario.hpp"

namespace parampac {

// JSON renderings. Output is deterministic: fixed key order and shortest
// round-trip doubles.

/// {"degree", "params", "monomials", "coeffs", "lambda", "eps", "eta", "samples", "seed"}
std::string to_json(const PacPolynomial& fit);
// Throws Error(InvalidArgument) on malformed documents.
PacPolynomial pac_from_json(std::string_view text);

std::string to_json(const SafetyVerdict& v);
std::string to_json(const LinearSafetyResult& v, double zeta);
std::string to_json(const CounterexampleResult& v, double zeta);
std::string to_json(const NearBetaVerdict& v);
std::string to_json(const RewardBoundVerdict& v);

}  // namespace parampac
