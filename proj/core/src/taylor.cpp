#include <map>

#include "parampac/analysis.hpp"
#include "parampac/error.hpp"
#include "parampac/oracle.hpp"

namespace parampac {

MPoly taylor_polynomial(const RatFun& f, std::span<const Rational> center, unsigned degree) {
    const std::size_t n = f.nvars();
    if (center.size() != n) throw Error(Errc::InvalidArgument, "center has the wrong dimension");
    if (sgn(f.den().evaluate<Rational>(center)) == 0) {
        throw Error(Errc::CenterSingular, "denominator vanishes at the expansion point");
    }
    // Partial derivatives by exponent, each obtained from a lower one by one more differentiation.
    std::map<Exponent, RatFun, GradedLexLess> deriv;
    const PolyTemplate tmpl(n, degree);
    MPoly out(n);
    for (const Exponent& a : tmpl.monomials()) {
        RatFun d = f;
        if (total_degree(a) > 0) {
            std::size_t i = 0;
            while (a[i] == 0) ++i;
            Exponent prev = a;
            prev[i] -= 1;
            d = deriv.at(prev).derivative(i);
        }
        Rational coeff = d.evaluate_exact(center);
        deriv.emplace(a, std::move(d));
        if (sgn(coeff) == 0) continue;
        MPoly term = MPoly::constant(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (unsigned k = 2; k <= a[i]; ++k) coeff /= k;
            if (a[i] == 0) continue;
            const MPoly shifted = MPoly::variable(n, i) - MPoly::constant(n, center[i]);
            term = term * shifted.pow(a[i]);
        }
        out += term.scaled(coeff);
    }
    return out;
}

TaylorReport taylor_compare(const RatFun& f, const ParamSpace& space, unsigned degree, TaylorCenter center,
                            const PacPolynomial* fit, std::uint64_t seed, std::size_t n_points) {
    TaylorReport r;
    r.center.resize(space.dim());
    if (center == TaylorCenter::Barycenter) {
        for (std::size_t i = 0; i < space.dim(); ++i) {
            r.center[i] = (space.params()[i].lo + space.params()[i].hi) / 2;
        }
    }
    r.taylor = taylor_polynomial(f, r.center, degree);
    const PointFunction fn = make_ratfun_oracle(f);
    const RealPoly t = to_real(r.taylor);
    const PointFunction tn = [&t](std::span<const double> x) { return t.evaluate<double>(x); };
    r.dist_taylor = l2_distance_mc(fn, tn, space, n_points, seed).value;
    if (fit) {
        const PointFunction fh = [fit](std::span<const double> x) { return (*fit)(x); };
        r.dist_fit = l2_distance_mc(fn, fh, space, n_points, seed).value;
    }
    return r;
}

}  // namespace parampac
