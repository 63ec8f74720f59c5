#include "stable_limits/step_path.hpp"

#include <algorithm>
#include <stdexcept>

namespace stable_limits {

StepPath::StepPath(double initial_value, std::vector<double> times, std::vector<double> values)
    : initial_value_(initial_value), times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() != values_.size())
        throw std::invalid_argument("StepPath: times/values size mismatch");
    double prev = 0.0;
    for (double t : times_) {
        if (!(t > prev && t <= 1.0))
            throw std::invalid_argument("StepPath: times must be strictly increasing in (0,1]");
        prev = t;
    }
}

double StepPath::value_at(double t) const {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return initial_value_;
    return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

double StepPath::left_limit(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return initial_value_;
    return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

double StepPath::increment(std::size_t i) const {
    if (i >= values_.size()) throw std::out_of_range("StepPath::increment");
    return values_[i] - (i == 0 ? initial_value_ : values_[i - 1]);
}

}  // namespace stable_limits
