#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stable_limits/functional.hpp"
#include "stable_limits/heavy_tail_model.hpp"
#include "stable_limits/step_path.hpp"

namespace stable_limits {

struct PathPair {
    StepPath s;  // S_n(t) = sum_{i <= [nt]} X_{n,i}
    StepPath y;  // Y_n(t) = sum_{i=2..[nt]} f(prefix_{i-1}) X_{n,i}
};

// Scaled, centered summands X_{n,i} = samples[i]/b_n - c_n; S_n jumps at i/n
// for i = 1..n, Y_n at i/n for i = 2..n.
PathPair build_functional_paths(std::span<const double> samples, const ScalingConstants& sc,
                                const FunctionalF& f);

// Theorem-2 variant: X^eps_{n,i} = (samples[i]/b_n) 1{kept} - centering, with
// the indicator on the scaled magnitude |x|/b_n >= eps by default (the raw
// |x| >= eps form sits behind scaled_threshold = false).
PathPair build_truncated_paths(std::span<const double> samples, const TailLaw& law,
                               const ScalingConstants& sc, const FunctionalF& f,
                               const TruncationFn& h, double eps, bool scaled_threshold = true);

// (S_n(t), Y_n(t)) at the given times without materialising full paths;
// agrees with build_functional_paths exactly. eval_times must be sorted.
struct PathEndpoints {
    std::vector<double> s;
    std::vector<double> y;
};
PathEndpoints evaluate_path_functionals(std::span<const double> samples, const ScalingConstants& sc,
                                        const FunctionalF& f, std::span<const double> eval_times);
PathEndpoints evaluate_truncated_functionals(std::span<const double> samples, const TailLaw& law,
                                             const ScalingConstants& sc, const FunctionalF& f,
                                             const TruncationFn& h, double eps,
                                             std::span<const double> eval_times,
                                             bool scaled_threshold = true);

// [n t] with protection against representation error in t.
std::size_t floor_index(std::size_t n, double t);

}  // namespace stable_limits
