#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parampac/expr.hpp"
#include "parampac/formula.hpp"
#include "parampac/model.hpp"

namespace parampac {

/// Parses the model format:
///
///   param p in [0.01, 0.09];
///   states s0 init, s1, s2;
///   label "done" = s2;
///   trans s0 -> s1 : p, s2 : 1-p;
///   reward "steps" { edge s0 -> s1 : 1; state s1 : 0.5; }
///
/// `#` starts a comment. Parameters come first, then the single `states`
/// declaration, then labels, transitions and rewards in any order.
/// Throws ParseError (code Parse or Semantic) with the 1-based position of the
/// offending token. Model invariant violations found after parsing (row sums at
/// the box center, negative probabilities) keep their own code and are reported
/// at the `states` keyword.
PDtmrm parse_model(std::string_view text);

// Reads and parses a model file; throws Error(Io) when unreadable.
PDtmrm load_model(const std::string& path);

/// Parses P=? [ path ], P<p [ path ], E=? [ F sf ], E{"r"}>=r [ F sf ] and
/// Boolean state formulas. Throws ParseError, or Error(BoundError) for
/// probability bounds outside [0,1] and negative reward bounds.
Formula parse_formula(std::string_view text);

/// Parses an arithmetic expression over the given parameter names
/// (+ - * / ^, parentheses, decimal literals).
Expr parse_expr(std::string_view text, std::span<const std::string> param_names);

/// Parses "name=value" assignments into a point ordered like the space.
/// Throws Error(UnknownParam | MissingParam | OutOfBox | InvalidArgument).
std::vector<double> parse_point(std::span<const std::string> assignments,
                                const ParamSpace& space);

/// Renders a model in the format accepted by parse_model.
std::string to_string(const PDtmrm& model);

}  // namespace parampac
