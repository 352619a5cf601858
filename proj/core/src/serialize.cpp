#include "parampac/serialize.hpp"

#include <nlohmann/json.hpp>

#include "parampac/error.hpp"

namespace parampac {

using json = nlohmann::ordered_json;

namespace {

std::string dump(const json& j) { return j.dump(2); }

json pac_json(const PacPolynomial& fit) {
    json j;
    j["degree"] = fit.tmpl.degree();
    j["params"] = fit.params;
    json monos = json::array();
    for (const Exponent& e : fit.tmpl.monomials()) monos.push_back(e);
    j["monomials"] = std::move(monos);
    j["coeffs"] = fit.coeffs;
    j["lambda"] = fit.lambda;
    j["eps"] = fit.eps;
    j["eta"] = fit.eta;
    j["samples"] = fit.samples;
    j["seed"] = fit.seed;
    return j;
}

json point_or_null(const std::vector<double>& p) { return p.empty() ? json(nullptr) : json(p); }

}  // namespace

std::string to_json(const PacPolynomial& fit) { return dump(pac_json(fit)); }

PacPolynomial pac_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        PacPolynomial fit;
        fit.params = j.at("params").get<std::vector<std::string>>();
        const unsigned degree = j.at("degree").get<unsigned>();
        fit.tmpl = PolyTemplate(fit.params.size(), degree);
        const auto coeffs = j.at("coeffs").get<std::vector<double>>();
        fit.coeffs.assign(fit.tmpl.size(), 0.0);
        if (j.contains("monomials")) {
            const auto monos = j.at("monomials").get<std::vector<Exponent>>();
            if (monos.size() != coeffs.size()) throw Error(Errc::InvalidArgument, "monomials and coeffs differ in length");
            for (std::size_t k = 0; k < monos.size(); ++k) {
                const auto& all = fit.tmpl.monomials();
                auto it = std::find(all.begin(), all.end(), monos[k]);
                if (it == all.end()) throw Error(Errc::InvalidArgument, "monomial outside the declared degree");
                fit.coeffs[static_cast<std::size_t>(it - all.begin())] += coeffs[k];
            }
        } else {
            if (coeffs.size() != fit.tmpl.size()) throw Error(Errc::InvalidArgument, "wrong number of coefficients");
            fit.coeffs = coeffs;
        }
        fit.lambda = j.value("lambda", 0.0);
        fit.eps = j.value("eps", 0.05);
        fit.eta = j.value("eta", 0.05);
        fit.samples = j.value("samples", std::size_t{0});
        fit.seed = j.value("seed", kDefaultSeed);
        if (!(fit.lambda >= 0.0)) throw Error(Errc::InvalidArgument, "lambda must be non-negative");
        return fit;
    } catch (const json::exception& e) {
        throw Error(Errc::InvalidArgument, std::string("malformed fit document: ") + e.what());
    }
}

std::string to_json(const SafetyVerdict& v) {
    static constexpr const char* names[] = {"SafeWithGuarantee", "UnsafeWitness", "Unknown"};
    json j;
    j["verdict"] = names[static_cast<int>(v.kind)];
    j["lambda_star"] = v.lambda_star;
    j["zeta"] = v.zeta;
    j["witness"] = point_or_null(v.witness);
    j["witness_value"] = v.kind == SafetyVerdict::Kind::UnsafeWitness ? json(v.witness_value) : json(nullptr);
    j["eps"] = v.eps;
    j["eta"] = v.eta;
    j["samples"] = v.samples;
    j["seed"] = v.seed;
    return dump(j);
}

std::string to_json(const LinearSafetyResult& v, double zeta) {
    static constexpr const char* names[] = {"CertifiedSafe", "PotentialUnsafe", "Inconclusive"};
    json j;
    j["verdict"] = names[static_cast<int>(v.kind)];
    j["zeta"] = zeta;
    j["max_upper"] = v.max_upper;
    j["argmax"] = point_or_null(v.argmax);
    j["superlevel_probability"] = v.superlevel.probability;
    j["half_width"] = v.superlevel.half_width;
    j["exact"] = v.superlevel.exact;
    return dump(j);
}

std::string to_json(const CounterexampleResult& v, double zeta) {
    json j;
    j["result"] = v.found ? "RealCounterexample" : "NoneFound";
    j["zeta"] = zeta;
    j["point"] = point_or_null(v.point);
    j["value"] = v.point.empty() ? json(nullptr) : json(v.value);
    j["iterations"] = v.iterations;
    j["spurious"] = v.spurious;
    j["fit"] = pac_json(v.fit);
    return dump(j);
}

std::string to_json(const NearBetaVerdict& v) {
    json j;
    j["holds"] = v.holds;
    j["ub"] = v.ub;
    j["norm_fit"] = v.norm_fit;
    j["beta"] = v.beta;
    j["zeta"] = v.zeta;
    j["p_norm"] = v.p_norm;
    j["M"] = v.upper_bound_f;
    j["eps"] = v.eps;
    j["eta"] = v.eta;
    j["lambda"] = v.lambda;
    return dump(j);
}

std::string to_json(const RewardBoundVerdict& v) {
    json j;
    j["holds"] = v.holds;
    j["lower_bound"] = v.lower_bound;
    j["rho"] = v.rho;
    j["integral"] = v.integral;
    j["max_ub"] = v.max_ub;
    j["max_loose"] = v.max_loose;
    return dump(j);
}

}  // namespace parampac
