#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parampac/expr.hpp"
#include "parampac/param_space.hpp"

namespace parampac {

using StateSet = std::vector<bool>;
using Labels = std::map<std::string, StateSet>;

template <class Weight>
struct Transition {
    std::size_t target;
    Weight weight;
};

/// Constant, non-negative rewards attached to states and edges.
struct RewardStructure {
    std::vector<double> state;                                  // one entry per state
    std::map<std::pair<std::size_t, std::size_t>, double> edge;  // (from, to) -> reward
    bool operator==(const RewardStructure&) const = default;
};
using RewardMap = std::map<std::string, RewardStructure>;

inline constexpr double kRowSumTolerance = 1e-9;

/// Parametric DTMC: every transition weight is an expression over the
/// parameters of `space()`. Immutable after construction.
class PDtmc {
public:
    using Row = std::vector<Transition<Expr>>;

    // Validates the structure: init in range, no empty rows, no duplicate edges,
    // label sets sized to the state count, and every row summing to 1 within
    // kRowSumTolerance at the box center. Throws Error(Semantic | RowSumViolation |
    // NegativeProbability | DivisionByZero).
    PDtmc(ParamSpace space, std::vector<std::string> state_names, std::size_t init,
          std::vector<Row> rows, Labels labels);

    const ParamSpace& space() const { return space_; }
    std::size_t num_states() const { return rows_.size(); }
    std::size_t init() const { return init_; }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::vector<Row>& rows() const { return rows_; }
    const Row& row(std::size_t s) const { return rows_[s]; }
    const Labels& labels() const { return *labels_; }
    const std::shared_ptr<const Labels>& shared_labels() const { return labels_; }
    std::size_t num_edges() const;
    std::optional<std::size_t> state_index(std::string_view name) const;

    bool operator==(const PDtmc& o) const;

private:
    ParamSpace space_;
    std::vector<std::string> state_names_;
    std::size_t init_;
    std::vector<Row> rows_;
    std::shared_ptr<const Labels> labels_;
};

/// Parametric DTMC with named constant reward structures.
class PDtmrm {
public:
    // Throws Error(Semantic) on negative rewards, wrongly sized state rewards or
    // edge rewards on absent edges.
    PDtmrm(PDtmc chain, RewardMap rewards);
    explicit PDtmrm(PDtmc chain) : PDtmrm(std::move(chain), {}) {}

    const PDtmc& chain() const { return chain_; }
    const RewardMap& rewards() const { return *rewards_; }
    const std::shared_ptr<const RewardMap>& shared_rewards() const { return rewards_; }

    bool operator==(const PDtmrm& o) const;

private:
    PDtmc chain_;
    std::shared_ptr<const RewardMap> rewards_;
};

/// Concrete DTMC (optionally with rewards) induced by an evaluation.
struct Dtmc {
    std::size_t init = 0;
    std::vector<std::vector<Transition<double>>> rows;
    std::shared_ptr<const Labels> labels;
    std::shared_ptr<const RewardMap> rewards;  // may be null
    std::vector<double> point;                 // the evaluation that induced it

    std::size_t num_states() const { return rows.size(); }
    // Empty set when the label is unknown.
    StateSet label(std::string_view name) const;
};

/// Builds a concrete chain directly from probabilities (validated like instantiate's output).
Dtmc make_dtmc(std::vector<std::vector<Transition<double>>> rows, std::size_t init,
               Labels labels = {}, RewardMap rewards = {});

// Evaluates every transition at `point`. Throws Error(OutOfBox | InvalidArgument |
// DivisionByZero | NegativeProbability | RowSumViolation).
Dtmc instantiate(const PDtmc& model, std::span<const double> point);
Dtmc instantiate(const PDtmrm& model, std::span<const double> point);

enum class EdgeVerdict { AlwaysPositive, AlwaysZero, Indeterminate };

struct EdgeReport {
    std::size_t from;
    std::size_t to;
    EdgeVerdict verdict;
    std::optional<Interval> range;  // absent when interval evaluation failed
};

/// Checks that the graph does not depend on the evaluation: each edge weight is
/// enclosed over the whole box by interval arithmetic.
std::vector<EdgeReport> validate_assumption1(const PDtmc& model);

}  // namespace parampac
