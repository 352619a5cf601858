#include "parampac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "parampac/error.hpp"
#include "parampac/rng.hpp"

namespace parampac {

double poly_integral_box(const RealPoly& poly, const ParamSpace& space, bool normalize) {
    double total = 0.0;
    for (const auto& [e, c] : poly.terms()) {
        double term = c;
        for (std::size_t i = 0; i < space.dim(); ++i) {
            const double a = e[i] + 1.0;
            term *= (std::pow(space.hi(i), a) - std::pow(space.lo(i), a)) / a;
        }
        total += term;
    }
    return normalize ? total / box_volume(space) : total;
}

double poly_lp_norm(const RealPoly& poly, const ParamSpace& space, double beta, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(Errc::BadNorm, "L_p norm needs finite p >= 1");
    if (p != 2.0) return poly_lp_norm_quadrature(poly, space, beta, p);
    const RealPoly g = poly - RealPoly::constant(space.dim(), beta);
    return std::sqrt(std::max(0.0, poly_integral_box(g * g, space, false)));
}

namespace {

struct GaussRule {
    std::vector<double> x, w;  // on [-1,1]
};

GaussRule gauss_legendre(unsigned n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pi = std::acos(-1.0);
    for (unsigned i = 0; i < n; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (unsigned k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        r.x[i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
}

template <class F>
double tensor_rule(const GaussRule& g, const std::vector<double>& lo, const std::vector<double>& hi, F&& f) {
    const std::size_t n = lo.size();
    const std::size_t k = g.x.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    double jac = 1.0;
    for (std::size_t i = 0; i < n; ++i) jac *= 0.5 * (hi[i] - lo[i]);
    double sum = 0.0;
    for (;;) {
        double w = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 0.5 * (lo[i] + hi[i]) + 0.5 * (hi[i] - lo[i]) * g.x[idx[i]];
            w *= g.w[idx[i]];
        }
        sum += w * f(x);
        std::size_t d = 0;
        while (d < n && ++idx[d] == k) idx[d++] = 0;
        if (d == n) break;
    }
    return sum * jac;
}

struct Region {
    std::vector<double> lo, hi;
    double value = 0.0;
    double error = 0.0;
    bool operator<(const Region& o) const { return error < o.error; }
};

}  // namespace

double poly_lp_norm_quadrature(const RealPoly& poly, const ParamSpace& space, double beta, double p, double tol) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(Errc::BadNorm, "L_p norm needs finite p >= 1");
    const std::size_t n = space.dim();
    const RealPoly g = poly - RealPoly::constant(n, beta);
    auto f = [&](const std::vector<double>& x) {
        return std::pow(std::abs(g.evaluate<double>(x)), p);
    };
    static const GaussRule hi_rule = gauss_legendre(8);
    static const GaussRule lo_rule = gauss_legendre(5);
    auto make = [&](std::vector<double> lo, std::vector<double> hi) {
        Region r{std::move(lo), std::move(hi)};
        r.value = tensor_rule(hi_rule, r.lo, r.hi, f);
        r.error = std::abs(r.value - tensor_rule(lo_rule, r.lo, r.hi, f));
        return r;
    };
    std::vector<double> lo(n), hi(n), width(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = space.lo(i);
        hi[i] = space.hi(i);
        width[i] = hi[i] - lo[i];
    }
    std::priority_queue<Region> heap;
    Region root = make(lo, hi);
    double total = root.value, err = root.error;
    heap.push(std::move(root));
    const std::size_t max_regions = 200000;
    std::size_t regions = 1;
    while (err > tol * std::max(std::abs(total), 1e-300) + 1e-300) {
        if (regions >= max_regions) {
            throw Error(Errc::QuadratureFailure, "cubature did not reach the requested tolerance");
        }
        Region r = heap.top();
        heap.pop();
        std::size_t d = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if ((r.hi[i] - r.lo[i]) / width[i] > (r.hi[d] - r.lo[d]) / width[d]) d = i;
        }
        const double mid = 0.5 * (r.lo[d] + r.hi[d]);
        std::vector<double> h1 = r.hi, l2 = r.lo;
        h1[d] = mid;
        l2[d] = mid;
        Region a = make(r.lo, h1), b = make(l2, r.hi);
        total += a.value + b.value - r.value;
        err += a.error + b.error - r.error;
        heap.push(std::move(a));
        heap.push(std::move(b));
        ++regions;
        if (err < 0.0) {
            // Recompute from scratch to shed accumulated rounding.
            err = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                err += copy.top().error;
                copy.pop();
            }
        }
    }
    return std::pow(std::max(total, 0.0), 1.0 / p);
}

namespace {

struct BoxEntry {
    std::vector<Interval> box;
    double upper;
    bool operator<(const BoxEntry& o) const { return upper < o.upper; }
};

std::vector<double> midpoint(const std::vector<Interval>& box) {
    std::vector<double> m(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) m[i] = box[i].mid();
    return m;
}

}  // namespace

MaxBound poly_max_upper_bound(const RealPoly& poly, const ParamSpace& space, double tol, std::size_t max_boxes) {
    const std::size_t n = space.dim();
    MaxBound out;
    auto rigorous_at = [&](const std::vector<double>& x) {
        std::vector<Interval> pt(x.begin(), x.end());
        return poly.evaluate<Interval>(pt).hi;
    };
    if (poly.total_degree() <= 1) {
        std::vector<double> corner(n);
        for (std::size_t i = 0; i < n; ++i) {
            Exponent e(n, 0);
            e[i] = 1;
            corner[i] = poly.coefficient(e) > 0.0 ? space.hi(i) : space.lo(i);
        }
        out.best_point = corner;
        out.best_value = poly.evaluate<double>(corner);
        out.upper = rigorous_at(corner);
        out.boxes = 1;
        return out;
    }

    std::vector<RealPoly> grad;
    for (std::size_t i = 0; i < n; ++i) grad.push_back(poly.derivative(i));
    auto enclose = [&](const std::vector<Interval>& box) {
        Interval natural = poly.evaluate<Interval>(box);
        const std::vector<double> m = midpoint(box);
        std::vector<Interval> mi(m.begin(), m.end());
        Interval mv = poly.evaluate<Interval>(mi);
        for (std::size_t i = 0; i < n; ++i) {
            mv = mv + grad[i].evaluate<Interval>(box) * (box[i] - Interval(m[i]));
        }
        const Interval both = intersect(natural, mv);
        return both.lo <= both.hi ? both.hi : std::min(natural.hi, mv.hi);
    };

    const std::vector<Interval> root = space.box();
    out.best_point = midpoint(root);
    out.best_value = poly.evaluate<double>(out.best_point);
    std::priority_queue<BoxEntry> heap;
    heap.push({root, enclose(root)});
    out.boxes = 1;
    double upper = heap.top().upper;
    while (!heap.empty()) {
        BoxEntry top = heap.top();
        upper = top.upper;
        if (upper - out.best_value <= tol) break;
        if (out.boxes >= max_boxes) {
            out.loose = true;
            break;
        }
        heap.pop();
        std::size_t d = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (top.box[i].width() / root[i].width() > top.box[d].width() / root[d].width()) d = i;
        }
        const double mid = top.box[d].mid();
        for (int side = 0; side < 2; ++side) {
            BoxEntry child{top.box, 0.0};
            child.box[d] = side == 0 ? Interval(top.box[d].lo, mid) : Interval(mid, top.box[d].hi);
            const std::vector<double> m = midpoint(child.box);
            const double v = poly.evaluate<double>(m);
            if (v > out.best_value) {
                out.best_value = v;
                out.best_point = m;
            }
            child.upper = enclose(child.box);
            ++out.boxes;
            if (child.upper > out.best_value) heap.push(std::move(child));
        }
        if (heap.empty()) upper = out.best_value;
    }
    out.upper = std::max(upper, rigorous_at(out.best_point));
    return out;
}

namespace {

double clip_area(double a1, double a2, double c, double x0, double x1, double y0, double y1) {
    // Area of {a1 x + a2 y + c > 0} inside the rectangle (Sutherland-Hodgman, one plane).
    const std::vector<std::pair<double, double>> rect{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    auto val = [&](const std::pair<double, double>& p) { return a1 * p.first + a2 * p.second + c; };
    std::vector<std::pair<double, double>> poly;
    for (std::size_t i = 0; i < rect.size(); ++i) {
        const auto& p = rect[i];
        const auto& q = rect[(i + 1) % rect.size()];
        const double vp = val(p), vq = val(q);
        if (vp > 0) poly.push_back(p);
        if ((vp > 0) != (vq > 0)) {
            const double t = vp / (vp - vq);
            poly.push_back({p.first + t * (q.first - p.first), p.second + t * (q.second - p.second)});
        }
    }
    double area = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        area += p.first * q.second - q.first * p.second;
    }
    return std::abs(area) / 2.0;
}

}  // namespace

SuperlevelResult superlevel_probability(const RealPoly& poly, const ParamSpace& space, double threshold,
                                        std::uint64_t seed, std::size_t n_samples) {
    const std::size_t n = space.dim();
    SuperlevelResult r;
    if (poly.total_degree() <= 1 && n <= 2) {
        r.exact = true;
        const double c = poly.constant_term() - threshold;
        if (n == 0) {
            r.probability = c > 0.0 ? 1.0 : 0.0;
            return r;
        }
        std::vector<double> a(n);
        for (std::size_t i = 0; i < n; ++i) {
            Exponent e(n, 0);
            e[i] = 1;
            a[i] = poly.coefficient(e);
        }
        if (n == 1) {
            const double lo = space.lo(0), hi = space.hi(0);
            if (a[0] == 0.0) {
                r.probability = c > 0.0 ? 1.0 : 0.0;
            } else {
                const double root = -c / a[0];
                const double len = a[0] > 0.0 ? hi - std::clamp(root, lo, hi) : std::clamp(root, lo, hi) - lo;
                r.probability = len / (hi - lo);
            }
            return r;
        }
        r.probability = clip_area(a[0], a[1], c, space.lo(0), space.hi(0), space.lo(1), space.hi(1)) /
                        box_volume(space);
        r.probability = std::clamp(r.probability, 0.0, 1.0);
        return r;
    }
    Xoshiro256ss rng(seed);
    std::vector<double> x(n);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        for (std::size_t i = 0; i < n; ++i) x[i] = space.lo(i) + rng.uniform() * (space.hi(i) - space.lo(i));
        if (poly.evaluate<double>(x) > threshold) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    r.probability = p;
    r.half_width = 2.576 * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    return r;
}

SafetyVerdict safe_region_check(const PointFunction& oracle, const ParamSpace& space, double zeta, double eps,
                                double eta, std::uint64_t seed, unsigned threads) {
    if (!(zeta >= 0.0)) throw Error(Errc::InvalidArgument, "safety level must be non-negative");
    SafetyVerdict v;
    v.zeta = zeta;
    v.eps = eps;
    v.eta = eta;
    v.seed = seed;
    v.samples = sample_count(eps, eta, 1);
    const SampleSet s = evaluate_samples(oracle, draw_samples(space, v.samples, seed), seed, "", threads);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::isnan(s.values[i])) {
            v.kind = SafetyVerdict::Kind::Unknown;
            v.lambda_star = s.values[i];
            return v;
        }
        if (s.values[i] > s.values[arg]) arg = i;
    }
    v.lambda_star = s.values[arg];
    if (v.lambda_star < zeta) {
        v.kind = SafetyVerdict::Kind::SafeWithGuarantee;
    } else {
        v.kind = SafetyVerdict::Kind::UnsafeWitness;
        v.witness = s.points[arg];
        v.witness_value = s.values[arg];
    }
    return v;
}

LinearSafetyResult linear_safety_check(const PacPolynomial& fit, const ParamSpace& space, double zeta) {
    const RealPoly poly = fit.polynomial();
    if (poly.total_degree() > 1) throw Error(Errc::InvalidArgument, "linear safety check needs a degree-1 fit");
    LinearSafetyResult r;
    const MaxBound mb = poly_max_upper_bound(poly, space, 1e-12);
    r.max_upper = mb.upper + fit.lambda;
    r.argmax = mb.best_point;
    r.superlevel = superlevel_probability(poly, space, zeta + fit.lambda, fit.seed);
    if (r.max_upper < zeta) {
        r.kind = LinearSafetyResult::Kind::CertifiedSafe;
    } else if (r.superlevel.probability - r.superlevel.half_width > fit.eps) {
        r.kind = LinearSafetyResult::Kind::PotentialUnsafe;
    } else {
        r.kind = LinearSafetyResult::Kind::Inconclusive;
    }
    return r;
}

CounterexampleResult counterexample_search(const PointFunction& oracle, const PacPolynomial& fit, SampleSet training,
                                           const ParamSpace& space, double zeta, std::size_t max_iters) {
    CounterexampleResult r;
    r.fit = fit;
    for (std::size_t it = 0; it < max_iters; ++it) {
        const MaxBound mb = poly_max_upper_bound(r.fit.polynomial(), space, 1e-9);
        const std::vector<double> cand = mb.best_point;
        if (std::find(r.spurious.begin(), r.spurious.end(), cand) != r.spurious.end()) break;
        double value = 0.0;
        try {
            value = oracle(cand);
        } catch (const std::exception& e) {
            throw OracleFailure(it, e.what());
        }
        r.iterations = it + 1;
        r.point = cand;
        r.value = value;
        if (value > zeta) {
            r.found = true;
            return r;
        }
        r.spurious.push_back(cand);
        training.points.push_back(cand);
        training.values.push_back(value);
        if (it + 1 < max_iters) {
            FitOptions opt;
            opt.allow_unsound = true;
            r.fit = fit_pac(training, r.fit.tmpl, space, r.fit.eps, r.fit.eta, opt);
        }
    }
    return r;
}

NearBetaVerdict near_beta_check(const PacPolynomial& fit, const ParamSpace& space, double beta, double zeta,
                                double p, double upper_bound_f) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(Errc::BadNorm, "L_p norm needs finite p >= 1");
    NearBetaVerdict v;
    v.beta = beta;
    v.zeta = zeta;
    v.p_norm = p;
    v.upper_bound_f = upper_bound_f;
    v.eps = fit.eps;
    v.eta = fit.eta;
    v.lambda = fit.lambda;
    const double vol = box_volume(space);
    v.norm_fit = poly_lp_norm(fit.polynomial(), space, beta, p);
    const double inner = fit.lambda * std::pow((1.0 - fit.eps) * vol, 1.0 / p) + v.norm_fit;
    const double tail = fit.eps * vol * std::max(std::pow(std::abs(upper_bound_f - beta), p), std::pow(std::abs(beta), p));
    v.ub = std::pow(std::pow(inner, p) + tail, 1.0 / p);
    v.holds = v.ub < zeta;
    return v;
}

RewardBoundVerdict reward_expectation_bound(const PacPolynomial& fit, const ParamSpace& space, double rho,
                                            double max_tol) {
    RewardBoundVerdict v;
    v.rho = rho;
    const RealPoly g = fit.polynomial() - RealPoly::constant(space.dim(), fit.lambda);
    v.integral = poly_integral_box(g, space, true);
    const MaxBound mb = poly_max_upper_bound(g, space, max_tol);
    v.max_ub = mb.upper;
    v.max_loose = mb.loose;
    v.lower_bound = v.integral - fit.eps * box_volume(space) * std::max(0.0, mb.upper);
    v.holds = v.lower_bound > rho;
    return v;
}

L2Estimate l2_distance_mc(const PointFunction& f, const PointFunction& g, const ParamSpace& space,
                          std::size_t n_points, std::uint64_t seed) {
    if (n_points < 2) throw Error(Errc::InvalidArgument, "need at least two points");
    const double vol = box_volume(space);
    Xoshiro256ss rng(seed);
    std::vector<double> x(space.dim());
    double mean = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < n_points; ++k) {
        for (std::size_t i = 0; i < space.dim(); ++i) x[i] = space.lo(i) + rng.uniform() * (space.hi(i) - space.lo(i));
        const double d = f(x) - g(x);
        const double v = d * d;
        const double delta = v - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (v - mean);
    }
    const double var = m2 / static_cast<double>(n_points - 1);
    L2Estimate e;
    const double integral = vol * mean;
    e.value = std::sqrt(std::max(integral, 0.0));
    const double se_integral = vol * std::sqrt(var / static_cast<double>(n_points));
    e.std_error = e.value > 0.0 ? se_integral / (2.0 * e.value) : std::sqrt(se_integral);
    return e;
}

}  // namespace parampac
