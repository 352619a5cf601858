#include "parampac/formula.hpp"

#include "parampac/error.hpp"
#include "parampac/rational.hpp"

namespace parampac {

bool compare(double value, Cmp cmp, double bound) {
    switch (cmp) {
        case Cmp::Less: return value < bound;
        case Cmp::LessEq: return value <= bound;
        case Cmp::GreaterEq: return value >= bound;
        case Cmp::Greater: return value > bound;
    }
    return false;
}

std::string to_string(Cmp cmp) {
    switch (cmp) {
        case Cmp::Less: return "<";
        case Cmp::LessEq: return "<=";
        case Cmp::GreaterEq: return ">=";
        case Cmp::Greater: return ">";
    }
    return "?";
}

namespace {

bool same(const std::shared_ptr<const StateFormula>& a, const std::shared_ptr<const StateFormula>& b) {
    if (!a || !b) return !a && !b;
    return *a == *b;
}

}  // namespace

bool StateFormula::operator==(const StateFormula& o) const {
    if (kind != o.kind || label != o.label || reward_name != o.reward_name || bound != o.bound) {
        return false;
    }
    if (!same(left, o.left) || !same(right, o.right)) return false;
    if (!path || !o.path) return !path && !o.path;
    return *path == *o.path;
}

bool PathFormula::operator==(const PathFormula& o) const {
    return kind == o.kind && steps == o.steps && same(left, o.left) && same(right, o.right);
}

bool equal(const Formula& a, const Formula& b) { return same(a, b); }

namespace formula {

namespace {
Formula make(StateFormula f) { return std::make_shared<const StateFormula>(std::move(f)); }
}  // namespace

Formula tt() { return make({}); }

Formula ff() { return negation(tt()); }

Formula atom(std::string label) {
    StateFormula f;
    f.kind = StateFormula::Kind::Atom;
    f.label = std::move(label);
    return make(std::move(f));
}

Formula negation(Formula a) {
    StateFormula f;
    f.kind = StateFormula::Kind::Not;
    f.left = std::move(a);
    return make(std::move(f));
}

Formula conjunction(Formula a, Formula b) {
    StateFormula f;
    f.kind = StateFormula::Kind::And;
    f.left = std::move(a);
    f.right = std::move(b);
    return make(std::move(f));
}

Formula disjunction(Formula a, Formula b) {
    return negation(conjunction(negation(std::move(a)), negation(std::move(b))));
}

Formula prob(PathPtr path, std::optional<Bound> bound) {
    if (bound && !(bound->value >= 0.0 && bound->value <= 1.0)) {
        throw Error(Errc::BoundError,
                    "probability bound " + format_double(bound->value) + " outside [0,1]");
    }
    StateFormula f;
    f.kind = StateFormula::Kind::Prob;
    f.path = std::move(path);
    f.bound = bound;
    return make(std::move(f));
}

Formula reward(Formula target, std::optional<Bound> bound, std::string reward_name) {
    if (bound && !(bound->value >= 0.0)) {
        throw Error(Errc::BoundError, "reward bound " + format_double(bound->value) + " is negative");
    }
    StateFormula f;
    f.kind = StateFormula::Kind::Reward;
    f.left = std::move(target);
    f.bound = bound;
    f.reward_name = std::move(reward_name);
    return make(std::move(f));
}

namespace {
PathPtr make_path(PathFormula::Kind kind, Formula a, Formula b, unsigned steps) {
    PathFormula p;
    p.kind = kind;
    p.left = std::move(a);
    p.right = std::move(b);
    p.steps = steps;
    return std::make_shared<const PathFormula>(std::move(p));
}
}  // namespace

PathPtr next(Formula f) { return make_path(PathFormula::Kind::Next, nullptr, std::move(f), 0); }

PathPtr until(Formula a, Formula b) {
    return make_path(PathFormula::Kind::Until, std::move(a), std::move(b), 0);
}

PathPtr bounded_until(Formula a, Formula b, unsigned steps) {
    return make_path(PathFormula::Kind::BoundedUntil, std::move(a), std::move(b), steps);
}

PathPtr eventually(Formula f) { return until(tt(), std::move(f)); }

}  // namespace formula

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string bound_text(const std::optional<Bound>& b) {
    return b ? to_string(b->cmp) + format_double(b->value) : "=?";
}

// Operands of & and U that are themselves conjunctions get parentheses.
std::string operand(const StateFormula& f) {
    const std::string s = to_string(f);
    return f.kind == StateFormula::Kind::And ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const StateFormula& f) {
    switch (f.kind) {
        case StateFormula::Kind::True: return "true";
        case StateFormula::Kind::Atom: return quoted(f.label);
        case StateFormula::Kind::Not: return "!" + operand(*f.left);
        case StateFormula::Kind::And: return to_string(*f.left) + " & " + operand(*f.right);
        case StateFormula::Kind::Prob: return "P" + bound_text(f.bound) + " [ " + to_string(*f.path) + " ]";
        case StateFormula::Kind::Reward: {
            std::string s = "E";
            if (!f.reward_name.empty()) s += "{" + quoted(f.reward_name) + "}";
            return s + bound_text(f.bound) + " [ F " + operand(*f.left) + " ]";
        }
    }
    return {};
}

std::string to_string(const PathFormula& p) {
    switch (p.kind) {
        case PathFormula::Kind::Next: return "X " + operand(*p.right);
        case PathFormula::Kind::Until:
            if (p.left->kind == StateFormula::Kind::True) return "F " + operand(*p.right);
            return operand(*p.left) + " U " + operand(*p.right);
        case PathFormula::Kind::BoundedUntil:
            return operand(*p.left) + " U<=" + std::to_string(p.steps) + " " + operand(*p.right);
    }
    return {};
}

}  // namespace parampac
