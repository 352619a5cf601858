#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "parampac/interval.hpp"
#include "parampac/rational.hpp"

namespace parampac {

/// Exponent vector alpha of a monomial x1^alpha1 ... xn^alphan.
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Graded lexicographic order: total degree first, then lexicographic with the
/// first variable most significant. (1,0) > (0,1), and (2,0) > (1,1) > (0,2).
struct GradedLexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

namespace detail {
inline bool is_zero_coeff(const Rational& c) { return sgn(c) == 0; }
inline bool is_zero_coeff(double c) { return c == 0.0; }

template <class V, class C>
V coeff_as(const C& c) {
    if constexpr (std::is_same_v<C, Rational> && !std::is_same_v<V, Rational>) {
        return V(to_double(c));
    } else {
        return V(c);
    }
}

template <class V>
V power(const V& base, unsigned e) {
    if constexpr (std::is_same_v<V, Interval>) {
        return pow(base, e);
    } else {
        V result(1);
        V b = base;
        while (e > 0) {
            if (e & 1U) result *= b;
            e >>= 1U;
            if (e > 0) b *= b;
        }
        return result;
    }
}
}  // namespace detail

/// Sparse multivariate polynomial over a coefficient field. Terms are kept in
/// graded-lex order and zero coefficients are never stored.
template <class Coeff>
class Polynomial {
public:
    using Terms = std::map<Exponent, Coeff, GradedLexLess>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Coeff& c) {
        Polynomial p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t index) {
        assert(index < nvars);
        Exponent e(nvars, 0);
        e[index] = 1;
        Polynomial p(nvars);
        p.add_term(e, Coeff(1));
        return p;
    }
    static Polynomial monomial(const Exponent& e, const Coeff& c) {
        Polynomial p(e.size());
        p.add_term(e, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && parampac::total_degree(terms_.begin()->first) == 0);
    }

    Coeff constant_term() const {
        auto it = terms_.find(Exponent(nvars_, 0));
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    Coeff coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    unsigned total_degree() const {
        return terms_.empty() ? 0 : parampac::total_degree(terms_.rbegin()->first);
    }

    // Coefficient of the graded-lex largest monomial. Precondition: !is_zero().
    const Coeff& leading_coefficient() const { return terms_.rbegin()->second; }

    void add_term(const Exponent& e, const Coeff& c) {
        assert(e.size() == nvars_);
        if (detail::is_zero_coeff(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (detail::is_zero_coeff(it->second)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        assert(o.nvars_ == nvars_);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        assert(o.nvars_ == nvars_);
        for (const auto& [e, c] : o.terms_) add_term(e, Coeff(-c));
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) {
        *this = *this * o;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) { return a.scaled(Coeff(-1)); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        assert(a.nvars_ == b.nvars_);
        Polynomial r(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, Coeff(ca * cb));
            }
        }
        return r;
    }

    Polynomial scaled(const Coeff& s) const {
        Polynomial r(nvars_);
        if (detail::is_zero_coeff(s)) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, Coeff(c * s));
        return r;
    }

    Polynomial pow(unsigned k) const {
        Polynomial result = constant(nvars_, Coeff(1));
        Polynomial base = *this;
        while (k > 0) {
            if (k & 1U) result = result * base;
            k >>= 1U;
            if (k > 0) base = base * base;
        }
        return result;
    }

    Polynomial derivative(std::size_t var) const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent d = e;
            d[var] -= 1;
            r.add_term(d, Coeff(c * Coeff(e[var])));
        }
        return r;
    }

    template <class V>
    V evaluate(std::span<const V> x) const {
        assert(x.size() == nvars_);
        V sum(0);
        for (const auto& [e, c] : terms_) {
            V term = detail::coeff_as<V>(c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] != 0) term = term * detail::power(x[i], e[i]);
            }
            sum = sum + term;
        }
        return sum;
    }

    template <class V>
    V operator()(std::span<const V> x) const { return evaluate<V>(x); }

    bool operator==(const Polynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

/// Exact polynomial with rational coefficients.
using MPoly = Polynomial<Rational>;
/// Floating-point polynomial used for fitted approximations.
using RealPoly = Polynomial<double>;

RealPoly to_real(const MPoly& p);
/// Exact conversion: every finite double is a dyadic rational.
MPoly to_exact(const RealPoly& p);

// Canonical text form: terms in descending graded-lex order, "coeff*x^k*y" terms,
// integer coefficients as "a", others as "a/b". The zero polynomial prints "0".
std::string to_string(const MPoly& p, std::span<const std::string> names);
std::string to_string(const RealPoly& p, std::span<const std::string> names);

}  // namespace parampac
