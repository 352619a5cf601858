#include "parampac/polynomial.hpp"

#include <numeric>

namespace parampac {

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0U); }

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RealPoly to_real(const MPoly& p) {
    RealPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, to_double(c));
    return r;
}

MPoly to_exact(const RealPoly& p) {
    MPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, Rational(c));
    return r;
}

namespace {

std::string monomial_text(const Exponent& e, std::span<const std::string> names) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

template <class Coeff, class Fmt>
std::string render(const Polynomial<Coeff>& p, std::span<const std::string> names, Fmt fmt) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        out += fmt(negative ? Coeff(-c) : c);
        const std::string mono = monomial_text(e, names);
        if (!mono.empty()) out += "*" + mono;
    }
    return out;
}

}  // namespace

std::string to_string(const MPoly& p, std::span<const std::string> names) {
    return render(p, names, [](const Rational& c) { return to_string(c); });
}

std::string to_string(const RealPoly& p, std::span<const std::string> names) {
    return render(p, names, [](double c) { return format_double(c); });
}

}  // namespace parampac
