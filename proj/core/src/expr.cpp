#include "parampac/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "parampac/error.hpp"
#include "parampac/polynomial.hpp"

namespace parampac {

struct Expr::Node {
    Kind kind;
    Rational value;
    double value_d = 0.0;
    std::size_t index = 0;
    unsigned exponent = 0;
    std::optional<Expr> a;
    std::optional<Expr> b;
    std::size_t arity = 0;
};

namespace {

template <class Node>
std::shared_ptr<const Node> make_binary(typename Expr::Kind kind, const Expr& a, const Expr& b,
                                        std::size_t arity) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = a;
    n->b = b;
    n->arity = arity;
    return n;
}

}  // namespace

Expr Expr::constant(Rational value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value_d = to_double(value);
    n->value = std::move(value);
    return Expr(std::move(n));
}

Expr Expr::param(std::size_t index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Param;
    n->index = index;
    n->arity = index + 1;
    return Expr(std::move(n));
}

Expr Expr::add(Expr a, Expr b) {
    const std::size_t ar = std::max(a.arity(), b.arity());
    return Expr(make_binary<Node>(Kind::Add, a, b, ar));
}

Expr Expr::sub(Expr a, Expr b) {
    const std::size_t ar = std::max(a.arity(), b.arity());
    return Expr(make_binary<Node>(Kind::Sub, a, b, ar));
}

Expr Expr::mul(Expr a, Expr b) {
    const std::size_t ar = std::max(a.arity(), b.arity());
    return Expr(make_binary<Node>(Kind::Mul, a, b, ar));
}

Expr Expr::div(Expr a, Expr b) {
    if (b.is_constant_zero()) throw Error(Errc::ZeroDenominator, "division by the constant 0");
    const std::size_t ar = std::max(a.arity(), b.arity());
    return Expr(make_binary<Node>(Kind::Div, a, b, ar));
}

Expr Expr::neg(Expr a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->arity = a.arity();
    n->a = std::move(a);
    return Expr(std::move(n));
}

Expr Expr::pow(Expr base, unsigned exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->arity = base.arity();
    n->exponent = exponent;
    n->a = std::move(base);
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
std::size_t Expr::param_index() const { return node_->index; }
const Expr& Expr::lhs() const { return *node_->a; }
const Expr& Expr::rhs() const { return *node_->b; }
unsigned Expr::exponent() const { return node_->exponent; }
std::size_t Expr::arity() const { return node_->arity; }

bool Expr::is_constant_zero() const {
    return node_->kind == Kind::Constant && sgn(node_->value) == 0;
}

double Expr::evaluate(std::span<const double> x) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant: return n.value_d;
        case Kind::Param: return x[n.index];
        case Kind::Add: return n.a->evaluate(x) + n.b->evaluate(x);
        case Kind::Sub: return n.a->evaluate(x) - n.b->evaluate(x);
        case Kind::Mul: return n.a->evaluate(x) * n.b->evaluate(x);
        case Kind::Div: {
            const double d = n.b->evaluate(x);
            if (d == 0.0) throw Error(Errc::DivisionByZero, "expression divides by zero");
            return n.a->evaluate(x) / d;
        }
        case Kind::Neg: return -n.a->evaluate(x);
        case Kind::Pow: return detail::power(n.a->evaluate(x), n.exponent);
    }
    return 0.0;
}

Interval Expr::evaluate(std::span<const Interval> box) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant: {
            if (Rational(n.value_d) == n.value) return Interval(n.value_d);
            constexpr double inf = std::numeric_limits<double>::infinity();
            return {std::nextafter(n.value_d, -inf), std::nextafter(n.value_d, inf)};
        }
        case Kind::Param: return box[n.index];
        case Kind::Add: return n.a->evaluate(box) + n.b->evaluate(box);
        case Kind::Sub: return n.a->evaluate(box) - n.b->evaluate(box);
        case Kind::Mul: return n.a->evaluate(box) * n.b->evaluate(box);
        case Kind::Div: return n.a->evaluate(box) / n.b->evaluate(box);
        case Kind::Neg: return -n.a->evaluate(box);
        case Kind::Pow: return parampac::pow(n.a->evaluate(box), n.exponent);
    }
    return {};
}

RatFun Expr::to_ratfun(std::size_t nvars) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant: return RatFun::constant(nvars, n.value);
        case Kind::Param: return RatFun::variable(nvars, n.index);
        case Kind::Add: return n.a->to_ratfun(nvars) + n.b->to_ratfun(nvars);
        case Kind::Sub: return n.a->to_ratfun(nvars) - n.b->to_ratfun(nvars);
        case Kind::Mul: return n.a->to_ratfun(nvars) * n.b->to_ratfun(nvars);
        case Kind::Div: {
            RatFun d = n.b->to_ratfun(nvars);
            if (d.is_zero()) {
                throw Error(Errc::ZeroDenominator, "denominator is symbolically zero");
            }
            return n.a->to_ratfun(nvars) / d;
        }
        case Kind::Neg: return -n.a->to_ratfun(nvars);
        case Kind::Pow: return n.a->to_ratfun(nvars).pow(n.exponent);
    }
    return RatFun(nvars);
}

bool Expr::operator==(const Expr& o) const {
    if (node_ == o.node_) return true;
    const Node& x = *node_;
    const Node& y = *o.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Kind::Constant: return x.value == y.value;
        case Kind::Param: return x.index == y.index;
        case Kind::Neg: return *x.a == *y.a;
        case Kind::Pow: return x.exponent == y.exponent && *x.a == *y.a;
        default: return *x.a == *y.a && *x.b == *y.b;
    }
}

namespace {

int precedence(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void render(const Expr& e, std::span<const std::string> names, std::string& out);

void render_child(const Expr& child, int min_prec, std::span<const std::string> names,
                  std::string& out) {
    if (precedence(child) < min_prec) {
        out += "(";
        render(child, names, out);
        out += ")";
    } else {
        render(child, names, out);
    }
}

void render(const Expr& e, std::span<const std::string> names, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::Constant: {
            const std::string s = to_decimal_string(e.value());
            const bool plain = s.find('/') == std::string::npos && s.front() != '-';
            out += plain ? s : "(" + s + ")";
            return;
        }
        case Expr::Kind::Param: {
            const std::size_t i = e.param_index();
            out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
            return;
        }
        case Expr::Kind::Neg:
            out += "-";
            render_child(e.lhs(), 3, names, out);
            return;
        case Expr::Kind::Pow:
            render_child(e.lhs(), 5, names, out);
            out += "^" + std::to_string(e.exponent());
            return;
        default: break;
    }
    const int prec = precedence(e);
    const char* op = e.kind() == Expr::Kind::Add   ? " + "
                     : e.kind() == Expr::Kind::Sub ? " - "
                     : e.kind() == Expr::Kind::Mul ? "*"
                                                   : "/";
    render_child(e.lhs(), prec, names, out);
    out += op;
    // Right operands bind tighter so a - (b - c) and a + (b + c) keep their shape.
    render_child(e.rhs(), prec + 1, names, out);
}

}  // namespace

std::string to_string(const Expr& e, std::span<const std::string> names) {
    std::string out;
    render(e, names, out);
    return out;
}

}  // namespace parampac
