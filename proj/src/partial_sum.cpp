#include "stable_limits/partial_sum.hpp"

#include <cmath>
#include <stdexcept>

namespace stable_limits {

namespace {

// Yields X_{n,i} from raw samples: scale, optional scaled-magnitude
// truncation, centering.
struct IncrementRule {
    double b_n;
    double center;
    double scaled_floor = 0.0;  // 0 disables the indicator

    double operator()(double raw) const {
        double u = raw / b_n;
        if (scaled_floor > 0.0 && std::abs(u) < scaled_floor) u = 0.0;
        return u - center;
    }
};

PathPair build_paths(std::span<const double> samples, std::size_t n, const FunctionalF& f,
                     const IncrementRule& rule) {
    if (samples.size() != n)
        throw std::invalid_argument("build paths: samples length must equal sc.n");
    const double dn = static_cast<double>(n);

    std::vector<double> s_times(n), s_values(n);
    std::vector<double> y_times(n > 1 ? n - 1 : 0), y_values(n > 1 ? n - 1 : 0);
    double prefix = 0.0;
    double y = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double inc = rule(samples[i - 1]);
        if (i >= 2) {
            y += f(prefix) * inc;
            y_times[i - 2] = static_cast<double>(i) / dn;
            y_values[i - 2] = y;
        }
        prefix += inc;
        s_times[i - 1] = static_cast<double>(i) / dn;
        s_values[i - 1] = prefix;
    }
    return {StepPath(0.0, std::move(s_times), std::move(s_values)),
            StepPath(0.0, std::move(y_times), std::move(y_values))};
}

PathEndpoints evaluate_endpoints(std::span<const double> samples, std::size_t n,
                                 const FunctionalF& f, const IncrementRule& rule,
                                 std::span<const double> eval_times) {
    if (samples.size() != n)
        throw std::invalid_argument("evaluate endpoints: samples length must equal sc.n");
    PathEndpoints out;
    out.s.resize(eval_times.size());
    out.y.resize(eval_times.size());

    std::vector<std::size_t> cut(eval_times.size());
    for (std::size_t k = 0; k < eval_times.size(); ++k) {
        if (k > 0 && eval_times[k] < eval_times[k - 1])
            throw std::invalid_argument("evaluate endpoints: eval_times must be sorted");
        cut[k] = floor_index(n, eval_times[k]);
    }

    double prefix = 0.0;
    double y = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        while (k < cut.size() && cut[k] == i) {
            out.s[k] = prefix;
            out.y[k] = y;
            ++k;
        }
        if (i == n) break;
        const double inc = rule(samples[i]);
        if (i + 1 >= 2) y += f(prefix) * inc;
        prefix += inc;
    }
    return out;
}

IncrementRule truncated_rule(std::span<const double> samples, const TailLaw& law,
                             const ScalingConstants& sc, const TruncationFn& h, double eps,
                             bool scaled_threshold) {
    (void)samples;
    if (!(eps > 0.0 && eps < TruncationFn::inner_radius))
        throw std::invalid_argument("truncated paths: eps must lie in (0, 1/2)");
    const double centering = truncated_centering(law, sc.n, h, eps, scaled_threshold);
    if (!scaled_threshold) {
        // |X| >= eps always holds on the support; plain rule with plain c_n.
        return {sc.b_n, centering, 0.0};
    }
    return {sc.b_n, centering, eps};
}

}  // namespace

std::size_t floor_index(std::size_t n, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("time must lie in [0,1]");
    const double scaled = t * static_cast<double>(n);
    auto idx = static_cast<std::size_t>(std::floor(scaled + 1e-9));
    return std::min(idx, n);
}

PathPair build_functional_paths(std::span<const double> samples, const ScalingConstants& sc,
                                const FunctionalF& f) {
    return build_paths(samples, sc.n, f, {sc.b_n, sc.c_n, 0.0});
}

PathPair build_truncated_paths(std::span<const double> samples, const TailLaw& law,
                               const ScalingConstants& sc, const FunctionalF& f,
                               const TruncationFn& h, double eps, bool scaled_threshold) {
    return build_paths(samples, sc.n, f,
                       truncated_rule(samples, law, sc, h, eps, scaled_threshold));
}

PathEndpoints evaluate_path_functionals(std::span<const double> samples, const ScalingConstants& sc,
                                        const FunctionalF& f, std::span<const double> eval_times) {
    return evaluate_endpoints(samples, sc.n, f, {sc.b_n, sc.c_n, 0.0}, eval_times);
}

PathEndpoints evaluate_truncated_functionals(std::span<const double> samples, const TailLaw& law,
                                             const ScalingConstants& sc, const FunctionalF& f,
                                             const TruncationFn& h, double eps,
                                             std::span<const double> eval_times,
                                             bool scaled_threshold) {
    return evaluate_endpoints(samples, sc.n, f,
                              truncated_rule(samples, law, sc, h, eps, scaled_threshold),
                              eval_times);
}

}  // namespace stable_limits
