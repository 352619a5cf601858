#include "parampac_cli/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "parampac/analysis.hpp"
#include "parampac/elim.hpp"
#include "parampac/error.hpp"
#include "parampac/mc.hpp"
#include "parampac/oracle.hpp"
#include "parampac/parser.hpp"
#include "parampac/serialize.hpp"

namespace parampac::cli {

namespace {

struct Config {
    std::string model_path;
    std::string formula;
    std::string oracle_expr;
    std::string fit_path;
    std::string out_path;
    std::vector<std::string> points;
    unsigned degree = 1;
    double eps = 0.05;
    double eta = 0.05;
    double zeta = 0.0;
    double beta = 0.5;
    double rho = 0.0;
    std::optional<double> upper_bound;
    double p_norm = 2.0;
    std::uint64_t seed = kDefaultSeed;
    std::size_t grid = 0;
    unsigned threads = 0;
    std::size_t max_iters = 10;
};

// Exit codes besides 0 (success) and 1 (error).
constexpr int kNegative = 2;
constexpr int kUnknown = 3;

struct Session {
    const Config& cfg;
    std::shared_ptr<const PDtmrm> model;
    Formula formula;

    explicit Session(const Config& c) : cfg(c) {
        model = std::make_shared<const PDtmrm>(load_model(c.model_path));
        if (!c.formula.empty()) formula = parse_formula(c.formula);
    }

    const ParamSpace& space() const { return model->chain().space(); }

    Formula query() const {
        if (!formula) throw Error(Errc::InvalidArgument, "a formula is required (-f/--formula)");
        if (!formula->is_query()) throw Error(Errc::InvalidArgument, "the formula must be a =? query");
        return formula;
    }

    std::pair<PointFunction, std::string> oracle() const {
        if (!cfg.oracle_expr.empty()) {
            const Expr e = parse_expr(cfg.oracle_expr, space().names());
            return {make_expr_oracle(e), "expr:" + to_string(e, space().names())};
        }
        const Formula q = query();
        return {make_model_oracle(model, q), "model:" + cfg.model_path + " " + to_string(*q)};
    }

    SampleSet training(const PolyTemplate& tmpl, const PointFunction& f, const std::string& id) const {
        const std::size_t l = sample_count(cfg.eps, cfg.eta, tmpl.size() + 1);
        return evaluate_samples(f, draw_samples(space(), l, cfg.seed), cfg.seed, id, cfg.threads);
    }

    PacPolynomial injected_fit() const {
        std::ifstream in(cfg.fit_path);
        if (!in) throw Error(Errc::Io, "cannot read fit file '" + cfg.fit_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        PacPolynomial fit = pac_from_json(ss.str());
        if (fit.params != space().names()) {
            throw Error(Errc::InvalidArgument, "fit parameters do not match the model");
        }
        return fit;
    }

    PacPolynomial fit(const PointFunction& f, const std::string& id) const {
        if (!cfg.fit_path.empty()) return injected_fit();
        const PolyTemplate tmpl(space().dim(), cfg.degree);
        return fit_pac(training(tmpl, f, id), tmpl, space(), cfg.eps, cfg.eta);
    }
};

int cmd_eval(const Config& cfg, std::ostream& out) {
    Session s(cfg);
    const std::vector<double> x = parse_point(cfg.points, s.space());
    if (!cfg.oracle_expr.empty()) {
        out << format_double(s.oracle().first(x)) << "\n";
        return 0;
    }
    if (!s.formula) throw Error(Errc::InvalidArgument, "a formula is required (-f/--formula)");
    const Dtmc d = instantiate(*s.model, x);
    const CheckResult r = check(d, *s.formula);
    if (r.is_value()) out << format_double(r.value()) << "\n";
    else out << (r.sat_set()[d.init] ? "true" : "false") << "\n";
    return 0;
}

bool is_boolean(const StateFormula& f) {
    switch (f.kind) {
        case StateFormula::Kind::True:
        case StateFormula::Kind::Atom: return true;
        case StateFormula::Kind::Not: return is_boolean(*f.left);
        case StateFormula::Kind::And: return is_boolean(*f.left) && is_boolean(*f.right);
        default: return false;
    }
}

int cmd_exact(const Config& cfg, std::ostream& out) {
    Session s(cfg);
    const Formula q = s.query();
    const StateFormula* target = nullptr;
    if (q->kind == StateFormula::Kind::Prob && q->path->kind == PathFormula::Kind::Until &&
        q->path->left->kind == StateFormula::Kind::True) {
        target = q->path->right.get();
    } else if (q->kind == StateFormula::Kind::Reward) {
        target = q->left.get();
    }
    if (!target || !is_boolean(*target)) {
        throw Error(Errc::InvalidArgument, "exact supports P=? [ F b ] and E=? [ F b ] with a Boolean target b");
    }
    const StateSet t = sat(instantiate(*s.model, s.space().center()), *target);
    const RatFun f = q->kind == StateFormula::Kind::Prob ? eliminate_reachability(s.model->chain(), t)
                                                         : eliminate_reward(*s.model, t, q->reward_name);
    out << to_string(f, s.space().names()) << "\n";
    return 0;
}

int cmd_fit(const Config& cfg, std::ostream& out) {
    Session s(cfg);
    if (cfg.grid > 0 && cfg.out_path.empty()) throw Error(Errc::InvalidArgument, "--grid needs --out <file.csv>");
    const auto [f, id] = s.oracle();
    const PacPolynomial fit = s.fit(f, id);
    out << to_json(fit) << "\n";
    if (cfg.grid > 0) emit_grid(fit, &f, s.space(), cfg.grid, cfg.out_path);
    return 0;
}

int cmd_safe(const Config& cfg, std::ostream& out) {
    Session s(cfg);
    const auto [f, id] = s.oracle();
    const SafetyVerdict v = safe_region_check(f, s.space(), cfg.zeta, cfg.eps, cfg.eta, cfg.seed, cfg.threads);
    out << to_json(v) << "\n";
    switch (v.kind) {
        case SafetyVerdict::Kind::SafeWithGuarantee: return 0;
        case SafetyVerdict::Kind::UnsafeWitness: return kNegative;
        default: return kUnknown;
    }
}

int cmd_cex(const Config& cfg, std::ostream& out) {
    Session s(cfg);
    const auto [f, id] = s.oracle();
    PacPolynomial fit;
    SampleSet train;
    if (!cfg.fit_path.empty()) {
        fit = s.injected_fit();
        train = s.training(fit.tmpl, f, id);
    } else {
        const PolyTemplate tmpl(s.space().dim(), cfg.degree);
        train = s.training(tmpl, f, id);
        fit = fit_pac(train, tmpl, s.space(), cfg.eps, cfg.eta);
    }
    if (fit.tmpl.degree() != 1) throw Error(Errc::InvalidArgument, "counterexample search needs a degree-1 fit");
    const CounterexampleResult r = counterexample_search(f, fit, std::move(train), s.space(), cfg.zeta, cfg.max_iters);
    out << to_json(r, cfg.zeta) << "\n";
    return r.found ? kNegative : 0;
}

int cmd_near(const Config& cfg, std::ostream& out) {
    Session s(cfg);
    const auto [f, id] = s.oracle();
    double m = 0.0;
    if (cfg.upper_bound) {
        m = *cfg.upper_bound;
    } else if (cfg.oracle_expr.empty() && s.formula && s.formula->kind == StateFormula::Kind::Prob) {
        m = 1.0;
    } else {
        throw Error(Errc::InvalidArgument, "-M/--upper-bound is required unless the formula is a probability");
    }
    const PacPolynomial fit = s.fit(f, id);
    const NearBetaVerdict v = near_beta_check(fit, s.space(), cfg.beta, cfg.zeta, cfg.p_norm, m);
    out << to_json(v) << "\n";
    return v.holds ? 0 : kNegative;
}

int cmd_reward_bound(const Config& cfg, std::ostream& out) {
    Session s(cfg);
    const auto [f, id] = s.oracle();
    const PacPolynomial fit = s.fit(f, id);
    const RewardBoundVerdict v = reward_expectation_bound(fit, s.space(), cfg.rho);
    out << to_json(v) << "\n";
    return v.holds ? 0 : kNegative;
}

}  // namespace

void emit_grid(const PacPolynomial& fit, const PointFunction* oracle, const ParamSpace& space,
               std::size_t resolution, const std::string& path) {
    if (resolution < 2) throw Error(Errc::InvalidArgument, "grid resolution must be at least 2");
    std::ofstream csv(path);
    if (!csv) throw Error(Errc::Io, "cannot write '" + path + "'");
    const std::size_t n = space.dim();
    for (const auto& name : space.names()) csv << name << ",";
    csv << (oracle ? "f,fhat\n" : "fhat\n");
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(idx[i]) / static_cast<double>(resolution - 1);
            x[i] = idx[i] + 1 == resolution ? space.hi(i) : space.lo(i) + t * (space.hi(i) - space.lo(i));
            csv << format_double(x[i]) << ",";
        }
        if (oracle) csv << format_double((*oracle)(x)) << ",";
        csv << format_double(fit(x)) << "\n";
        std::size_t d = n;
        while (d > 0 && ++idx[d - 1] == resolution) idx[--d] = 0;
        if (d == 0) break;
    }
    if (!csv) throw Error(Errc::Io, "failed writing '" + path + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"PAC polynomial approximations of parametric Markov chains", "parampac"};
    app.require_subcommand(1);

    auto base = [&](CLI::App* sub) {
        sub->add_option("model", cfg.model_path, "Model file")->required();
        sub->add_option("-f,--formula", cfg.formula, "PRCTL formula");
        sub->add_option("--oracle-expr", cfg.oracle_expr, "Closed-form value function over the parameters");
        sub->add_option("--seed", cfg.seed, "Sampling seed (default 0xC0FFEE)");
        sub->add_option("--threads", cfg.threads, "Oracle threads (0 = all cores)");
    };
    auto stats = [&](CLI::App* sub) {
        sub->add_option("-e,--eps", cfg.eps, "Violation probability epsilon");
        sub->add_option("-n,--eta", cfg.eta, "Confidence parameter eta");
    };
    auto fitting = [&](CLI::App* sub) {
        stats(sub);
        sub->add_option("-d,--degree", cfg.degree, "Polynomial degree");
        sub->add_option("--fit", cfg.fit_path, "Use this PacPolynomial JSON instead of fitting");
    };

    CLI::App* eval = app.add_subcommand("eval", "Value of a formula at a parameter point");
    base(eval);
    eval->add_option("-x,--point", cfg.points, "Parameter assignment name=value")->take_all();

    CLI::App* exact = app.add_subcommand("exact", "Exact rational function by state elimination");
    base(exact);

    CLI::App* fit = app.add_subcommand("fit", "PAC polynomial fit (JSON)");
    base(fit);
    fitting(fit);
    fit->add_option("--grid", cfg.grid, "CSV grid resolution per dimension");
    fit->add_option("--out", cfg.out_path, "CSV grid output file");

    CLI::App* safe = app.add_subcommand("safe", "Safe-region check by sampling");
    base(safe);
    stats(safe);
    safe->add_option("-z,--zeta", cfg.zeta, "Safety level")->required();

    CLI::App* cex = app.add_subcommand("cex", "Counterexample search with a linear fit");
    base(cex);
    fitting(cex);
    cex->add_option("-z,--zeta", cfg.zeta, "Safety level")->required();
    cex->add_option("--max-iters", cfg.max_iters, "Maximum candidates to check");

    CLI::App* near = app.add_subcommand("near", "Certify ||f - beta||_p < zeta");
    base(near);
    fitting(near);
    near->add_option("-b,--beta", cfg.beta, "Reference value beta")->required();
    near->add_option("-z,--zeta", cfg.zeta, "Safety level")->required();
    near->add_option("-p,--pnorm", cfg.p_norm, "Norm exponent p >= 1");
    near->add_option("-M,--upper-bound", cfg.upper_bound, "Upper bound of f over the box");

    CLI::App* reward = app.add_subcommand("reward-bound", "Lower-bound the expected value of f");
    base(reward);
    fitting(reward);
    reward->add_option("-r,--rho", cfg.rho, "Reward level rho")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*eval) return cmd_eval(cfg, out);
        if (*exact) return cmd_exact(cfg, out);
        if (*fit) return cmd_fit(cfg, out);
        if (*safe) return cmd_safe(cfg, out);
        if (*cex) return cmd_cex(cfg, out);
        if (*near) return cmd_near(cfg, out);
        if (*reward) return cmd_reward_bound(cfg, out);
    } catch (const Error& e) {
        err << "parampac: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "parampac: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace parampac::cli
