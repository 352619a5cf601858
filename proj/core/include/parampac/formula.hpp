#pragma once

#include <memory>
#include <optional>
#include <string>

namespace parampac {

enum class Cmp { Less, LessEq, GreaterEq, Greater };

bool compare(double value, Cmp cmp, double bound);
std::string to_string(Cmp cmp);

struct Bound {
    Cmp cmp;
    double value;
    bool operator==(const Bound&) const = default;
};

struct PathFormula;

/// PRCTL state formula. Derived operators (or, F, false) are desugared by the
/// factory functions, so the tree only contains the core grammar:
///   a | true | !phi | phi & phi | P~p [psi] | P=? [psi] | E~r [F phi] | E=? [F phi]
struct StateFormula {
    enum class Kind { True, Atom, Not, And, Prob, Reward };

    Kind kind = Kind::True;
    std::string label;        // Atom
    std::string reward_name;  // Reward; empty selects the model's only reward structure
    std::shared_ptr<const StateFormula> left;   // Not, And, Reward (the F target)
    std::shared_ptr<const StateFormula> right;  // And
    std::shared_ptr<const PathFormula> path;    // Prob
    std::optional<Bound> bound;                 // Prob, Reward; empty means "=?"

    bool is_query() const { return (kind == Kind::Prob || kind == Kind::Reward) && !bound; }
    bool operator==(const StateFormula& o) const;
};

struct PathFormula {
    enum class Kind { Next, Until, BoundedUntil };

    Kind kind = Kind::Next;
    std::shared_ptr<const StateFormula> left;  // Until, BoundedUntil
    std::shared_ptr<const StateFormula> right;
    unsigned steps = 0;  // BoundedUntil

    bool operator==(const PathFormula& o) const;
};

using Formula = std::shared_ptr<const StateFormula>;
using PathPtr = std::shared_ptr<const PathFormula>;

namespace formula {
Formula tt();
Formula ff();
Formula atom(std::string label);
Formula negation(Formula f);
Formula conjunction(Formula a, Formula b);
Formula disjunction(Formula a, Formula b);  // !(!a & !b)
// Throws Error(BoundError) when a bound lies outside [0,1].
Formula prob(PathPtr path, std::optional<Bound> bound);
// Throws Error(BoundError) when a bound is negative.
Formula reward(Formula target, std::optional<Bound> bound, std::string reward_name = {});

PathPtr next(Formula f);
PathPtr until(Formula a, Formula b);
PathPtr bounded_until(Formula a, Formula b, unsigned steps);
PathPtr eventually(Formula f);  // true U f
}  // namespace formula

bool equal(const Formula& a, const Formula& b);

// Re-parseable rendering, e.g. P=? [ F "checked" ].
std::string to_string(const StateFormula& f);
std::string to_string(const PathFormula& p);

}  // namespace parampac
