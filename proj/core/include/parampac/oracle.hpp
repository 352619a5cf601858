#pragma once

#include <memory>
#include <string>

#include "parampac/elim.hpp"
#include "parampac/expr.hpp"
#include "parampac/formula.hpp"
#include "parampac/model.hpp"

namespace parampac {

// Value oracles map an in-box parameter point to f(x). They are pure and safe
// to call concurrently.

/// Instantiates the model at x and checks a `=?` query there. Throws
/// Error(InvalidArgument) when phi is not a query.
PointFunction make_model_oracle(std::shared_ptr<const PDtmrm> model, Formula phi);

PointFunction make_expr_oracle(Expr e);

PointFunction make_ratfun_oracle(RatFun f);

}  // namespace parampac
