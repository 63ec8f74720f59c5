#pragma once

#include <cstddef>
#include <vector>

namespace stable_limits {

// A cadlag piecewise-constant path on [0,1]: value_at(t) is the value
// attached to the last event time <= t, or initial_value before the first.
class StepPath {
public:
    StepPath() = default;
    StepPath(double initial_value, std::vector<double> times, std::vector<double> values);

    double initial_value() const { return initial_value_; }
    std::size_t event_count() const { return times_.size(); }
    double time(std::size_t i) const { return times_[i]; }
    double value(std::size_t i) const { return values_[i]; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

    double value_at(double t) const;
    double left_limit(double t) const;

    // values[i] - values[i-1] (initial_value before index 0).
    double increment(std::size_t i) const;
    double final_value() const { return values_.empty() ? initial_value_ : values_.back(); }

private:
    double initial_value_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
};

}  // namespace stable_limits
