#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "parampac/interval.hpp"
#include "parampac/rational.hpp"

namespace parampac {

struct Parameter {
    std::string name;
    Rational lo;
    Rational hi;
};

/// Ordered parameters with closed ranges; the box X is their product and the
/// reference measure is the uniform distribution on X.
class ParamSpace {
public:
    ParamSpace() = default;
    // Throws Error(InvalidArgument) on duplicate names or lo >= hi.
    explicit ParamSpace(std::vector<Parameter> params);
    static ParamSpace from_doubles(const std::vector<std::string>& names,
                                   const std::vector<std::pair<double, double>>& ranges);

    std::size_t dim() const { return params_.size(); }
    const std::vector<Parameter>& params() const { return params_; }
    const std::vector<std::string>& names() const { return names_; }
    double lo(std::size_t i) const { return lo_[i]; }
    double hi(std::size_t i) const { return hi_[i]; }
    /// Index of the named parameter, or dim() when absent.
    std::size_t index_of(std::string_view name) const;

    bool contains(std::span<const double> point) const;
    std::vector<double> center() const;
    std::vector<Interval> box() const;

private:
    std::vector<Parameter> params_;
    std::vector<std::string> names_;
    std::vector<double> lo_;
    std::vector<double> hi_;
};

/// |X| = product of the range widths.
double box_volume(const ParamSpace& space);

}  // namespace parampac
