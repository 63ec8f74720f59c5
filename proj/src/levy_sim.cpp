#include "stable_limits/levy_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stable_limits {

void validate_limit_config(const LimitPathConfig& cfg, double alpha) {
    if (cfg.horizon != 1.0)
        throw std::invalid_argument("limit path: horizon is fixed at 1");
    if (!(cfg.jump_floor > 0.0 && cfg.jump_floor < TruncationFn::inner_radius))
        throw std::invalid_argument("limit path: jump floor must lie in (0, 1/2)");
    if (cfg.regime == LimitRegime::direct && !(alpha < 1.0))
        throw std::invalid_argument("limit path: direct regime requires alpha < 1");
    if (cfg.regime == LimitRegime::truncated && !(alpha >= 1.0))
        throw std::invalid_argument("limit path: truncated regime requires alpha in [1,2)");
    for (double t : cfg.sample_times)
        if (!(t > 0.0 && t <= cfg.horizon))
            throw std::invalid_argument("limit path: sample times must lie in (0, horizon]");
}

std::vector<JumpRecord> simulate_jumps(const LevyMeasure& measure, const LimitPathConfig& cfg,
                                       RngStream& rng) {
    validate_limit_config(cfg, measure.alpha());
    const double m = cfg.jump_floor;
    const double mean = cfg.horizon * std::pow(m, -measure.alpha());
    const std::uint64_t count = rng.poisson(mean);

    std::vector<JumpRecord> jumps(count);
    const double inv_alpha = 1.0 / measure.alpha();
    for (auto& j : jumps) {
        j.time = rng.uniform(cfg.horizon);
        const double magnitude = m * std::exp(-std::log(rng.uniform01()) * inv_alpha);
        j.size = rng.bernoulli(measure.p()) ? magnitude : -magnitude;
    }
    std::stable_sort(jumps.begin(), jumps.end(),
                     [](const JumpRecord& a, const JumpRecord& b) { return a.time < b.time; });
    return jumps;
}

StepPath assemble_levy_path(const std::vector<JumpRecord>& jumps, double drift_rate,
                            const LimitPathConfig& cfg) {
    std::vector<double> times;
    times.reserve(jumps.size() + cfg.sample_times.size() + 1);
    for (const auto& j : jumps) times.push_back(j.time);
    for (double t : cfg.sample_times) times.push_back(t);
    times.push_back(cfg.horizon);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<double> values(times.size());
    double jump_sum = 0.0;
    std::size_t next_jump = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        while (next_jump < jumps.size() && jumps[next_jump].time <= times[i])
            jump_sum += jumps[next_jump++].size;
        values[i] = jump_sum - drift_rate * times[i];
    }
    return StepPath(0.0, std::move(times), std::move(values));
}

StepPath simulate_levy_path(const LevyMeasure& measure, const LimitPathConfig& cfg,
                            const TruncationFn& h, RngStream& rng) {
    const auto jumps = simulate_jumps(measure, cfg, rng);
    const double drift = levy_drift_rate(measure, h, cfg.jump_floor);
    return assemble_levy_path(jumps, drift, cfg);
}

StepPath euler_stochastic_integral(const StepPath& path,
                                   const std::function<double(double)>& f) {
    std::vector<double> times(path.times());
    std::vector<double> values(times.size());
    double level = path.initial_value();
    double acc = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        acc += f(level) * (path.value(i) - level);
        level = path.value(i);
        values[i] = acc;
    }
    return StepPath(0.0, std::move(times), std::move(values));
}

double recommended_jump_floor(double alpha, double ks_tolerance) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("recommended_jump_floor: alpha out of range");
    const double budget = 0.1 * ks_tolerance;
    const double m = std::pow(budget * budget * (2.0 - alpha) / alpha, 1.0 / (2.0 - alpha));
    return std::min(m, 0.99 * TruncationFn::inner_radius);
}

}  // namespace stable_limits
