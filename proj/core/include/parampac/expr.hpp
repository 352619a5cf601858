#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "parampac/interval.hpp"
#include "parampac/rational.hpp"
#include "parampac/ratfun.hpp"

namespace parampac {

/// Arithmetic expression over parameters, as written in model files:
/// decimal constants, parameter references, + - * /, unary minus and
/// non-negative integer powers. Parameters are referenced by index into the
/// owning ParamSpace. Nodes are immutable and shared.
class Expr {
public:
    enum class Kind { Constant, Param, Add, Sub, Mul, Div, Neg, Pow };

    static Expr constant(Rational value);
    static Expr param(std::size_t index);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    // Throws Error(ZeroDenominator) when b is the syntactic constant 0.
    static Expr div(Expr a, Expr b);
    static Expr neg(Expr a);
    static Expr pow(Expr base, unsigned exponent);

    Kind kind() const;
    const Rational& value() const;        // Constant
    std::size_t param_index() const;      // Param
    const Expr& lhs() const;              // binary ops, Neg, Pow
    const Expr& rhs() const;              // binary ops
    unsigned exponent() const;            // Pow

    bool is_constant_zero() const;
    /// Largest parameter index referenced plus one (0 for closed expressions).
    std::size_t arity() const;

    // IEEE double evaluation; throws Error(DivisionByZero) on a zero divisor.
    double evaluate(std::span<const double> point) const;
    // Enclosure of the range over a box; throws Error(IntervalDivisionByZero).
    Interval evaluate(std::span<const Interval> box) const;
    // Exact rational function in nvars variables; throws Error(ZeroDenominator).
    RatFun to_ratfun(std::size_t nvars) const;

    // Structural equality.
    bool operator==(const Expr& o) const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Re-parseable text with minimal parentheses; constants print as exact decimals.
std::string to_string(const Expr& e, std::span<const std::string> names);

}  // namespace parampac
