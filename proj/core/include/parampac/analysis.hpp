#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "parampac/param_space.hpp"
#include "parampac/polynomial.hpp"
#include "parampac/ratfun.hpp"
#include "parampac/scenario.hpp"

namespace parampac {

// ---------------------------------------------------------------------------
// Polynomial machinery over the parameter box.
// ---------------------------------------------------------------------------

/// Closed-form integral of a polynomial over the box; with normalize the
/// result is divided by |X| (expectation under the uniform measure).
double poly_integral_box(const RealPoly& poly, const ParamSpace& space, bool normalize);

/// ||poly - beta||_p over the box (Lebesgue measure). p == 2 expands the square
/// and integrates exactly; other p >= 1 use adaptive Gauss-Legendre cubature.
/// Throws Error(BadNorm) for p < 1, Error(QuadratureFailure) when the cubature
/// does not converge.
double poly_lp_norm(const RealPoly& poly, const ParamSpace& space, double beta, double p = 2.0);

/// The cubature route of poly_lp_norm, usable for any p (including 2).
double poly_lp_norm_quadrature(const RealPoly& poly, const ParamSpace& space, double beta,
                               double p, double tol = 1e-8);

struct MaxBound {
    double upper = 0.0;       // rigorous upper bound of the maximum over the box
    double best_value = 0.0;  // best value attained at a sampled point
    std::vector<double> best_point;
    bool loose = false;       // box budget hit before upper - best_value <= tol
    std::size_t boxes = 0;
};

/// Interval branch-and-bound over the box (natural and mean-value enclosures,
/// widest-dimension bisection). Degree <= 1 is solved exactly at a corner.
MaxBound poly_max_upper_bound(const RealPoly& poly, const ParamSpace& space, double tol,
                              std::size_t max_boxes = 200000);

struct SuperlevelResult {
    double probability = 0.0;
    double half_width = 0.0;  // 99% confidence half-width; 0 when exact
    bool exact = false;
};

/// Uniform measure of {x in X : poly(x) > threshold}. Affine polynomials in one
/// or two variables are computed exactly (interval length / polygon clipping);
/// everything else by seeded Monte Carlo with n_samples points.
SuperlevelResult superlevel_probability(const RealPoly& poly, const ParamSpace& space,
                                        double threshold, std::uint64_t seed = kDefaultSeed,
                                        std::size_t n_samples = 1000000);

// ---------------------------------------------------------------------------
// Analyses built on PAC approximations.
// ---------------------------------------------------------------------------

struct SafetyVerdict {
    enum class Kind { SafeWithGuarantee, UnsafeWitness, Unknown };
    Kind kind = Kind::Unknown;
    std::vector<double> witness;  // UnsafeWitness: the maximizing sample
    double witness_value = 0.0;
    double lambda_star = 0.0;     // max oracle value over the samples
    double zeta = 0.0;
    double eps = 0.0;
    double eta = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = kDefaultSeed;
};

/// Samples sample_count(eps, eta, 1) points; lambda* = max f over them. Safe
/// with (eps, eta)-guarantee when lambda* < zeta, otherwise the maximizing
/// sample is an unsafe witness. NaN values give Unknown.
SafetyVerdict safe_region_check(const PointFunction& oracle, const ParamSpace& space, double zeta,
                                double eps, double eta, std::uint64_t seed = kDefaultSeed,
                                unsigned threads = 1);

struct LinearSafetyResult {
    enum class Kind { CertifiedSafe, PotentialUnsafe, Inconclusive };
    Kind kind = Kind::Inconclusive;
    double max_upper = 0.0;  // max over X of fhat + lambda
    std::vector<double> argmax;
    SuperlevelResult superlevel;  // P(fhat - lambda > zeta)
};

/// CertifiedSafe when max(fhat) + lambda < zeta; PotentialUnsafe when
/// P(fhat - lambda > zeta) > eps (for Monte Carlo estimates, estimate minus
/// half-width must exceed eps); Inconclusive otherwise.
/// Throws Error(InvalidArgument) unless the fit has degree <= 1.
LinearSafetyResult linear_safety_check(const PacPolynomial& fit, const ParamSpace& space,
                                       double zeta);

struct CounterexampleResult {
    bool found = false;
    std::vector<double> point;
    double value = 0.0;
    std::size_t iterations = 0;
    PacPolynomial fit;  // the last (possibly refined) fit
    std::vector<std::vector<double>> spurious;  // rejected candidates, in order
};

/// Evaluates the oracle at the maximizing corner of the linear fit; a value
/// above zeta is a real counterexample. Otherwise the candidate joins the
/// training set, the fit is recomputed and the search repeats, at most
/// max_iters candidates in total.
CounterexampleResult counterexample_search(const PointFunction& oracle, const PacPolynomial& fit,
                                           SampleSet training, const ParamSpace& space,
                                           double zeta, std::size_t max_iters);

struct NearBetaVerdict {
    bool holds = false;
    double ub = 0.0;
    double norm_fit = 0.0;  // ||fhat - beta||_p
    double beta = 0.0;
    double zeta = 0.0;
    double p_norm = 2.0;
    double upper_bound_f = 1.0;  // M
    double eps = 0.0;
    double eta = 0.0;
    double lambda = 0.0;
};

/// ub = ((lambda ((1-eps)|X|)^(1/p) + ||fhat - beta||_p)^p
///       + eps |X| max(|M - beta|^p, beta^p))^(1/p); holds iff ub < zeta.
/// Throws Error(BadNorm) for p < 1.
NearBetaVerdict near_beta_check(const PacPolynomial& fit, const ParamSpace& space, double beta,
                                double zeta, double p_norm, double upper_bound_f);

struct RewardBoundVerdict {
    bool holds = false;
    double lower_bound = 0.0;
    double rho = 0.0;
    double integral = 0.0;  // E_P[fhat - lambda]
    double max_ub = 0.0;    // rigorous upper bound of max(fhat - lambda)
    bool max_loose = false;
};

/// lower = E_P[fhat - lambda] - eps |X| max(0, U), U >= max_X (fhat - lambda);
/// holds iff lower > rho.
RewardBoundVerdict reward_expectation_bound(const PacPolynomial& fit, const ParamSpace& space,
                                            double rho, double max_tol = 1e-6);

// ---------------------------------------------------------------------------
// Taylor expansion comparison.
// ---------------------------------------------------------------------------

enum class TaylorCenter { Origin, Barycenter };

/// Degree-d Taylor polynomial of f at `center`, expanded in the monomial basis.
/// Throws Error(CenterSingular) when the denominator vanishes at the center.
MPoly taylor_polynomial(const RatFun& f, std::span<const Rational> center, unsigned degree);

struct TaylorReport {
    std::vector<Rational> center;
    MPoly taylor;
    double dist_taylor = 0.0;           // ||f - f^t||_2
    std::optional<double> dist_fit;     // ||f - fhat||_2 when a fit is supplied
};

/// Taylor polynomial plus L2 distances over the box, estimated by seeded Monte
/// Carlo with n_points points (f is rational, so no closed form).
TaylorReport taylor_compare(const RatFun& f, const ParamSpace& space, unsigned degree,
                            TaylorCenter center, const PacPolynomial* fit = nullptr,
                            std::uint64_t seed = kDefaultSeed, std::size_t n_points = 100000);

/// Monte Carlo estimate of ||f - g||_2 over the box with its standard error.
struct L2Estimate {
    double value = 0.0;
    double std_error = 0.0;
};
L2Estimate l2_distance_mc(const PointFunction& f, const PointFunction& g, const ParamSpace& space,
                          std::size_t n_points, std::uint64_t seed);

}  // namespace parampac
