#include "parampac/ratfun.hpp"

#include <optional>

#include "parampac/error.hpp"

namespace parampac {

namespace {

// Returns r with p == r * q when the two polynomials are proportional.
std::optional<Rational> proportional(const MPoly& p, const MPoly& q) {
    if (p.size() != q.size() || p.is_zero()) return std::nullopt;
    std::optional<Rational> ratio;
    auto it = q.terms().begin();
    for (const auto& [e, c] : p.terms()) {
        if (it->first != e) return std::nullopt;
        Rational r = c / it->second;
        if (ratio && *ratio != r) return std::nullopt;
        ratio = r;
        ++it;
    }
    return ratio;
}

}  // namespace

RatFun::RatFun(std::size_t nvars) : num_(nvars), den_(MPoly::constant(nvars, 1)) {}

RatFun::RatFun(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.nvars(), 1)) {
    normalize();
}

RatFun::RatFun(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.nvars() != den_.nvars()) {
        throw Error(Errc::InvalidArgument, "rational function operands differ in dimension");
    }
    normalize();
}

RatFun RatFun::constant(std::size_t nvars, const Rational& c) {
    return RatFun(MPoly::constant(nvars, c));
}

RatFun RatFun::variable(std::size_t nvars, std::size_t index) {
    return RatFun(MPoly::variable(nvars, index));
}

bool RatFun::is_constant() const { return num_.is_constant() && den_.is_constant(); }

void RatFun::normalize() {
    if (den_.is_zero()) throw Error(Errc::ZeroDenominator, "denominator is the zero polynomial");
    const std::size_t n = num_.nvars();
    if (num_.is_zero()) {
        den_ = MPoly::constant(n, 1);
        return;
    }
    if (auto ratio = proportional(num_, den_)) {
        num_ = MPoly::constant(n, *ratio);
        den_ = MPoly::constant(n, 1);
    }

    mpz_class lcm_den = 1;
    for (const MPoly* p : {&num_, &den_}) {
        for (const auto& [e, c] : p->terms()) {
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    mpz_class content = 0;
    for (const MPoly* p : {&num_, &den_}) {
        for (const auto& [e, c] : p->terms()) {
            mpz_class integral = c.get_num() * (lcm_den / c.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), integral.get_mpz_t());
        }
    }
    Rational factor(lcm_den, content);
    factor.canonicalize();
    if (den_.leading_coefficient() < 0) factor = -factor;
    if (factor != 1) {
        num_ = num_.scaled(factor);
        den_ = den_.scaled(factor);
    }
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    if (auto r = proportional(a.den_, b.den_)) {
        // a.den = r * b.den, so b.num / b.den = (r * b.num) / a.den.
        return RatFun(a.num_ + b.num_.scaled(*r), a.den_);
    }
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num_ = -r.num_;
    return r;
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun(a.nvars());
    // Cancel cross factors that are equal up to a constant.
    MPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    const std::size_t n = a.nvars();
    if (auto r = proportional(an, bd)) {
        an = MPoly::constant(n, *r);
        bd = MPoly::constant(n, 1);
    }
    if (auto r = proportional(bn, ad)) {
        bn = MPoly::constant(n, *r);
        ad = MPoly::constant(n, 1);
    }
    return RatFun(an * bn, ad * bd);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero rational function");
    RatFun inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    inv.normalize();
    return a * inv;
}

RatFun RatFun::pow(unsigned k) const { return RatFun(num_.pow(k), den_.pow(k)); }

RatFun RatFun::derivative(std::size_t var) const {
    MPoly top = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RatFun(std::move(top), den_ * den_);
}

double RatFun::evaluate(std::span<const double> x) const {
    const double d = den_.evaluate<double>(x);
    if (d == 0.0) throw Error(Errc::DivisionByZero, "rational function denominator vanishes");
    return num_.evaluate<double>(x) / d;
}

Rational RatFun::evaluate_exact(std::span<const Rational> x) const {
    const Rational d = den_.evaluate<Rational>(x);
    if (sgn(d) == 0) throw Error(Errc::DivisionByZero, "rational function denominator vanishes");
    return num_.evaluate<Rational>(x) / d;
}

bool RatFun::equivalent(const RatFun& other) const {
    return num_ * other.den_ == other.num_ * den_;
}

std::string to_string(const RatFun& f, std::span<const std::string> names) {
    auto part = [&](const MPoly& p) {
        std::string s = to_string(p, names);
        return p.size() > 1 ? "(" + s + ")" : s;
    };
    const bool unit_den = f.den().is_constant() && f.den().constant_term() == 1;
    if (unit_den) return to_string(f.num(), names);
    return part(f.num()) + " / " + part(f.den());
}

}  // namespace parampac
