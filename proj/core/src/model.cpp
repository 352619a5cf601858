#include "parampac/model.hpp"

#include <cmath>
#include <set>

#include "parampac/error.hpp"

namespace parampac {

namespace {

void check_rows(std::span<const std::vector<Transition<double>>> rows, std::span<const double> point) {
    for (std::size_t s = 0; s < rows.size(); ++s) {
        double sum = 0.0;
        for (const auto& t : rows[s]) {
            if (!(t.weight >= 0.0) || t.weight > 1.0 + kRowSumTolerance) {
                throw Error(Errc::NegativeProbability,
                            "transition " + std::to_string(s) + " -> " + std::to_string(t.target) +
                                " has probability " + format_double(t.weight) + " outside [0,1]");
            }
            sum += t.weight;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            std::string where;
            for (std::size_t i = 0; i < point.size(); ++i) {
                where += (i ? ", " : "") + format_double(point[i]);
            }
            throw Error(Errc::RowSumViolation, "row " + std::to_string(s) + " sums to " +
                                                   format_double(sum) + " at (" + where + ")");
        }
    }
}

void check_structure(std::size_t n, std::size_t init,
                     std::span<const std::vector<std::size_t>> targets) {
    if (n == 0) throw Error(Errc::Semantic, "model has no states");
    if (init >= n) throw Error(Errc::Semantic, "initial state out of range");
    for (std::size_t s = 0; s < n; ++s) {
        if (targets[s].empty()) {
            throw Error(Errc::Semantic, "state " + std::to_string(s) + " has no outgoing transition");
        }
        std::set<std::size_t> seen;
        for (std::size_t t : targets[s]) {
            if (t >= n) throw Error(Errc::Semantic, "transition target out of range");
            if (!seen.insert(t).second) {
                throw Error(Errc::Semantic, "duplicate edge " + std::to_string(s) + " -> " +
                                                std::to_string(t));
            }
        }
    }
}

void check_labels(const Labels& labels, std::size_t n) {
    for (const auto& [name, set] : labels) {
        if (set.size() != n) throw Error(Errc::Semantic, "label '" + name + "' has the wrong size");
    }
}

}  // namespace

PDtmc::PDtmc(ParamSpace space, std::vector<std::string> state_names, std::size_t init,
             std::vector<Row> rows, Labels labels)
    : space_(std::move(space)),
      state_names_(std::move(state_names)),
      init_(init),
      rows_(std::move(rows)),
      labels_(std::make_shared<const Labels>(std::move(labels))) {
    const std::size_t n = rows_.size();
    if (state_names_.size() != n) {
        throw Error(Errc::Semantic, "state names and transition rows differ in count");
    }
    std::vector<std::vector<std::size_t>> targets(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& t : rows_[s]) {
            if (t.weight.arity() > space_.dim()) {
                throw Error(Errc::Semantic, "transition references an unknown parameter");
            }
            targets[s].push_back(t.target);
        }
    }
    check_structure(n, init_, targets);
    check_labels(*labels_, n);
    (void)instantiate(*this, space_.center());
}

std::size_t PDtmc::num_edges() const {
    std::size_t e = 0;
    for (const auto& r : rows_) e += r.size();
    return e;
}

std::optional<std::size_t> PDtmc::state_index(std::string_view name) const {
    for (std::size_t i = 0; i < state_names_.size(); ++i) {
        if (state_names_[i] == name) return i;
    }
    return std::nullopt;
}

bool PDtmc::operator==(const PDtmc& o) const {
    if (space_.params().size() != o.space_.params().size()) return false;
    for (std::size_t i = 0; i < space_.dim(); ++i) {
        const Parameter& a = space_.params()[i];
        const Parameter& b = o.space_.params()[i];
        if (a.name != b.name || a.lo != b.lo || a.hi != b.hi) return false;
    }
    if (state_names_ != o.state_names_ || init_ != o.init_ || *labels_ != *o.labels_) return false;
    if (rows_.size() != o.rows_.size()) return false;
    for (std::size_t s = 0; s < rows_.size(); ++s) {
        if (rows_[s].size() != o.rows_[s].size()) return false;
        for (std::size_t k = 0; k < rows_[s].size(); ++k) {
            if (rows_[s][k].target != o.rows_[s][k].target) return false;
            if (!(rows_[s][k].weight == o.rows_[s][k].weight)) return false;
        }
    }
    return true;
}

PDtmrm::PDtmrm(PDtmc chain, RewardMap rewards) : chain_(std::move(chain)) {
    const std::size_t n = chain_.num_states();
    for (auto& [name, rs] : rewards) {
        if (rs.state.empty()) rs.state.assign(n, 0.0);
        if (rs.state.size() != n) {
            throw Error(Errc::Semantic, "reward '" + name + "' has the wrong number of state entries");
        }
        for (double r : rs.state) {
            if (!(r >= 0.0) || !std::isfinite(r)) {
                throw Error(Errc::Semantic, "reward '" + name + "' has a negative state reward");
            }
        }
        for (const auto& [edge, r] : rs.edge) {
            if (!(r >= 0.0) || !std::isfinite(r)) {
                throw Error(Errc::Semantic, "reward '" + name + "' has a negative edge reward");
            }
            bool present = false;
            if (edge.first < n) {
                for (const auto& t : chain_.row(edge.first)) present = present || t.target == edge.second;
            }
            if (!present) {
                throw Error(Errc::Semantic, "reward '" + name + "' is attached to an absent edge");
            }
        }
    }
    rewards_ = std::make_shared<const RewardMap>(std::move(rewards));
}

bool PDtmrm::operator==(const PDtmrm& o) const {
    return chain_ == o.chain_ && *rewards_ == *o.rewards_;
}

StateSet Dtmc::label(std::string_view name) const {
    if (!labels) return {};
    auto it = labels->find(std::string(name));
    return it == labels->end() ? StateSet{} : it->second;
}

Dtmc make_dtmc(std::vector<std::vector<Transition<double>>> rows, std::size_t init, Labels labels,
               RewardMap rewards) {
    const std::size_t n = rows.size();
    std::vector<std::vector<std::size_t>> targets(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& t : rows[s]) targets[s].push_back(t.target);
    }
    check_structure(n, init, targets);
    check_labels(labels, n);
    check_rows(rows, {});
    for (auto& [name, rs] : rewards) {
        if (rs.state.empty()) rs.state.assign(n, 0.0);
        if (rs.state.size() != n) throw Error(Errc::Semantic, "reward '" + name + "' has the wrong size");
    }
    Dtmc d;
    d.init = init;
    d.rows = std::move(rows);
    d.labels = std::make_shared<const Labels>(std::move(labels));
    d.rewards = std::make_shared<const RewardMap>(std::move(rewards));
    return d;
}

Dtmc instantiate(const PDtmc& model, std::span<const double> point) {
    if (point.size() != model.space().dim()) {
        throw Error(Errc::InvalidArgument, "point has dimension " + std::to_string(point.size()) +
                                               ", expected " + std::to_string(model.space().dim()));
    }
    if (!model.space().contains(point)) throw Error(Errc::OutOfBox, "point lies outside the parameter box");
    Dtmc d;
    d.init = model.init();
    d.labels = model.shared_labels();
    d.point.assign(point.begin(), point.end());
    d.rows.resize(model.num_states());
    for (std::size_t s = 0; s < model.num_states(); ++s) {
        d.rows[s].reserve(model.row(s).size());
        for (const auto& t : model.row(s)) {
            d.rows[s].push_back({t.target, t.weight.evaluate(point)});
        }
    }
    check_rows(d.rows, point);
    return d;
}

Dtmc instantiate(const PDtmrm& model, std::span<const double> point) {
    Dtmc d = instantiate(model.chain(), point);
    d.rewards = model.shared_rewards();
    return d;
}

std::vector<EdgeReport> validate_assumption1(const PDtmc& model) {
    const std::vector<Interval> box = model.space().box();
    std::vector<EdgeReport> report;
    for (std::size_t s = 0; s < model.num_states(); ++s) {
        for (const auto& t : model.row(s)) {
            EdgeReport r{s, t.target, EdgeVerdict::Indeterminate, std::nullopt};
            if (t.weight.is_constant_zero()) {
                r.verdict = EdgeVerdict::AlwaysZero;
                r.range = Interval(0.0);
            } else {
                try {
                    const Interval iv = t.weight.evaluate(std::span<const Interval>(box));
                    r.range = iv;
                    if (iv.lo > 0.0) r.verdict = EdgeVerdict::AlwaysPositive;
                    else if (iv.lo == 0.0 && iv.hi == 0.0) r.verdict = EdgeVerdict::AlwaysZero;
                } catch (const Error&) {
                    // Denominator enclosure straddles zero: cannot decide.
                }
            }
            report.push_back(r);
        }
    }
    return report;
}

}  // namespace parampac
