#include "parampac/param_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parampac/error.hpp"

namespace parampac {

ParamSpace::ParamSpace(std::vector<Parameter> params) : params_(std::move(params)) {
    for (const Parameter& p : params_) {
        if (std::find(names_.begin(), names_.end(), p.name) != names_.end()) {
            throw Error(Errc::InvalidArgument, "duplicate parameter '" + p.name + "'");
        }
        if (!(p.lo < p.hi)) {
            throw Error(Errc::InvalidArgument, "empty range for parameter '" + p.name + "'");
        }
        names_.push_back(p.name);
        lo_.push_back(to_double(p.lo));
        hi_.push_back(to_double(p.hi));
    }
}

ParamSpace ParamSpace::from_doubles(const std::vector<std::string>& names,
                                    const std::vector<std::pair<double, double>>& ranges) {
    if (names.size() != ranges.size()) {
        throw Error(Errc::InvalidArgument, "names and ranges differ in length");
    }
    std::vector<Parameter> params;
    for (std::size_t i = 0; i < names.size(); ++i) {
        params.push_back({names[i], Rational(ranges[i].first), Rational(ranges[i].second)});
    }
    return ParamSpace(std::move(params));
}

std::size_t ParamSpace::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return names_.size();
}

bool ParamSpace::contains(std::span<const double> point) const {
    if (point.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        // Against the rounded bounds, so "p=0.01" typed by a user is inside.
        const double x = point[i];
        if (!(x >= lo_[i] && x <= hi_[i])) return false;
    }
    return true;
}

std::vector<double> ParamSpace::center() const {
    std::vector<double> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        c[i] = to_double(Rational((params_[i].lo + params_[i].hi) / 2));
    }
    return c;
}

std::vector<Interval> ParamSpace::box() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<Interval> b(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        double l = lo_[i];
        double h = hi_[i];
        if (Rational(l) > params_[i].lo) l = std::nextafter(l, -inf);
        if (Rational(h) < params_[i].hi) h = std::nextafter(h, inf);
        b[i] = {l, h};
    }
    return b;
}

double box_volume(const ParamSpace& space) {
    double v = 1.0;
    for (std::size_t i = 0; i < space.dim(); ++i) v *= space.hi(i) - space.lo(i);
    return v;
}

}  // namespace parampac
