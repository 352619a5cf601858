#include "parampac/oracle.hpp"

#include "parampac/error.hpp"
#include "parampac/mc.hpp"

namespace parampac {

PointFunction make_model_oracle(std::shared_ptr<const PDtmrm> model, Formula phi) {
    if (!model || !phi || !phi->is_query()) {
        throw Error(Errc::InvalidArgument, "a value oracle needs a model and a =? query");
    }
    return [model = std::move(model), phi = std::move(phi)](std::span<const double> x) {
        return check(instantiate(*model, x), *phi).value();
    };
}

PointFunction make_expr_oracle(Expr e) {
    return [e = std::move(e)](std::span<const double> x) { return e.evaluate(x); };
}

PointFunction make_ratfun_oracle(RatFun f) {
    return [f = std::move(f)](std::span<const double> x) { return f.evaluate(x); };
}

}  // namespace parampac
