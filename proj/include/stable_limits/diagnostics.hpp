#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "stable_limits/rng.hpp"

namespace stable_limits {

struct KSResult {
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;  // statistic < threshold
};

// Two-sample Kolmogorov-Smirnov by merge scan. level in {0.05, 0.01};
// threshold c(level) * sqrt((n_a + n_b)/(n_a n_b)) with c = 1.358 / 1.628.
KSResult ks_two_sample(std::span<const double> a, std::span<const double> b, double level);

double ks_critical_coefficient(double level);

// Permutation-calibrated variant for small samples: the threshold is the
// empirical (1 - level) quantile of the statistic over pooled-relabelled
// resamples.
KSResult ks_two_sample_permutation(std::span<const double> a, std::span<const double> b,
                                   double level, std::size_t permutations, RngStream& rng);

// sup over u_grid of |ecf_a(u) - ecf_b(u)|, ecf(u) = (1/n) sum exp(i u x).
double ecf_distance(std::span<const double> a, std::span<const double> b,
                    std::span<const double> u_grid);

// Hill tail-index estimator on the k largest magnitudes:
// k / sum_{i=1..k} log(|x|_(i) / |x|_(k+1)), order statistics descending.
double hill_estimate(std::span<const double> samples, std::size_t k);

// Matched empirical quantiles at levels j/(m+1), type-7 interpolation.
std::vector<std::pair<double, double>> qq_points(std::span<const double> a,
                                                 std::span<const double> b, std::size_t m);

}  // namespace stable_limits
