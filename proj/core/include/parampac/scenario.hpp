#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parampac/elim.hpp"
#include "parampac/lp.hpp"
#include "parampac/param_space.hpp"
#include "parampac/polynomial.hpp"

namespace parampac {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

std::size_t binomial(std::size_t n, std::size_t k);

/// All monomials of total degree <= d in n variables, ordered by degree and,
/// within one degree, with the first variable's exponent descending:
/// 1, p, q, p^2, pq, q^2, ...
class PolyTemplate {
public:
    PolyTemplate() = default;
    PolyTemplate(std::size_t nvars, unsigned degree);

    std::size_t nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }
    std::size_t size() const { return monomials_.size(); }
    const std::vector<Exponent>& monomials() const { return monomials_; }

    std::vector<double> evaluate_monomials(std::span<const double> x) const;
    RealPoly polynomial(std::span<const double> coeffs) const;

    bool operator==(const PolyTemplate&) const = default;

private:
    std::size_t nvars_ = 0;
    unsigned degree_ = 0;
    std::vector<Exponent> monomials_;
};

struct SampleSet {
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::vector<double>> points;
    std::vector<double> values;
    std::string oracle_id;

    std::size_t size() const { return points.size(); }
};

/// A fitted polynomial with its margin and the statistical tags it was
/// produced under: with confidence 1-eta, P(|f - fhat| <= lambda) >= 1-eps.
struct PacPolynomial {
    PolyTemplate tmpl;
    std::vector<std::string> params;
    std::vector<double> coeffs;
    double lambda = 0.0;
    double eps = 0.05;
    double eta = 0.05;
    std::size_t samples = 0;
    std::uint64_t seed = kDefaultSeed;

    double operator()(std::span<const double> x) const;
    RealPoly polynomial() const { return tmpl.polynomial(coeffs); }
};

/// Scenario sample bound ceil((2/eps) * (ln(1/eta) + m)), m = number of decision
/// variables. Throws Error(BadStatParam) unless eps, eta in (0,1] and m >= 1.
std::size_t sample_count(double eps, double eta, std::size_t m);

/// l i.i.d. uniform points of the box, coordinate j of point i taken from the
/// (i*n + j)-th uniform double of Xoshiro256ss(seed), x = lo + u*(hi - lo).
/// Prefix-stable: the first l points of a larger draw equal a draw of l.
/// Throws Error(InvalidArgument) for l == 0.
std::vector<std::vector<double>> draw_samples(const ParamSpace& space, std::size_t l,
                                              std::uint64_t seed);

/// Evaluates the oracle at every point, possibly on several threads; values are
/// stored by index. The first failing index (in index order) is rethrown as
/// OracleFailure. threads == 0 uses the hardware concurrency.
SampleSet evaluate_samples(const PointFunction& oracle, std::vector<std::vector<double>> points,
                           std::uint64_t seed, std::string oracle_id, unsigned threads = 1);

struct FitOptions {
    // Skip the sample-count precondition (for experiments only).
    bool allow_unsound = false;
    LpOptions lp;
};

/// Minimax fit: min lambda s.t. |f(x_i) - c . mono(x_i)| <= lambda, lambda >= 0.
/// Throws Error(TooFewSamples) when |samples| < sample_count(eps, eta, size+1)
/// and allow_unsound is off, Error(LpFailure) when the LP is not solved.
PacPolynomial fit_pac(const SampleSet& samples, const PolyTemplate& tmpl,
                      const ParamSpace& space, double eps, double eta,
                      const FitOptions& options = {});

double poly_eval(const PolyTemplate& tmpl, std::span<const double> coeffs,
                 std::span<const double> x);

}  // namespace parampac
