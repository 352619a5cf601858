#pragma once

#include <span>
#include <string>

#include "parampac/polynomial.hpp"

namespace parampac {

/// Quotient of two exact polynomials.
///
/// Normal form: the denominator's graded-lex leading coefficient is positive,
/// numerator and denominator have integer coefficients with no common integer
/// content, and the zero function is 0/1. No multivariate GCD is cancelled, so
/// two equal functions may have different representations; compare them with
/// `equivalent` (cross-multiplication) or by evaluation.
class RatFun {
public:
    RatFun() = default;
    explicit RatFun(std::size_t nvars);
    explicit RatFun(MPoly num);
    // Throws Error(ZeroDenominator) when den is the zero polynomial.
    RatFun(MPoly num, MPoly den);

    static RatFun constant(std::size_t nvars, const Rational& c);
    static RatFun variable(std::size_t nvars, std::size_t index);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const;

    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    // Throws Error(DivisionByZero) when b is the zero function.
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a);

    RatFun pow(unsigned k) const;
    RatFun derivative(std::size_t var) const;

    // Throws Error(DivisionByZero) when the denominator vanishes at x.
    double evaluate(std::span<const double> x) const;
    Rational evaluate_exact(std::span<const Rational> x) const;

    /// Functional equality by the cross-multiplied identity a.num*b.den == b.num*a.den.
    bool equivalent(const RatFun& other) const;

    // Structural equality of the normal forms.
    bool operator==(const RatFun& o) const = default;

private:
    void normalize();

    MPoly num_;
    MPoly den_;
};

/// Canonical form "num / den"; multi-term parts are parenthesized and a unit
/// denominator is omitted, e.g. "1*q^2 / (2*p*q - 2*p - 1*q)".
std::string to_string(const RatFun& f, std::span<const std::string> names);

}  // namespace parampac
