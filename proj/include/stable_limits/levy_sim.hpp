#pragma once

#include <functional>
#include <vector>

#include "stable_limits/heavy_tail_model.hpp"
#include "stable_limits/rng.hpp"
#include "stable_limits/step_path.hpp"

namespace stable_limits {

struct JumpRecord {
    double time;
    double size;
};

enum class LimitRegime {
    direct,     // alpha < 1: compensated small jumps below the floor are dropped
    truncated,  // alpha in [1,2): the eps-truncated process Z^eps, exact in law
};

struct LimitPathConfig {
    LimitRegime regime = LimitRegime::direct;
    double jump_floor = 1e-4;  // delta (direct) or eps (truncated); must be < 1/2
    double horizon = 1.0;
    // Extra event times at which the path value (including accumulated
    // drift) is recorded; the horizon is always included.
    std::vector<double> sample_times;
};

void validate_limit_config(const LimitPathConfig& cfg, double alpha);

// Jumps above the magnitude floor on (0, horizon]: Poisson count with mean
// horizon * floor^{-alpha}, uniform times, magnitudes floor * U^{-1/alpha},
// sign + with probability p. Sorted by time.
std::vector<JumpRecord> simulate_jumps(const LevyMeasure& measure, const LimitPathConfig& cfg,
                                       RngStream& rng);

// Piecewise-constant skeleton of (sum of jumps up to t) - drift_rate * t,
// recorded at every jump time and every sample time.
StepPath assemble_levy_path(const std::vector<JumpRecord>& jumps, double drift_rate,
                            const LimitPathConfig& cfg);

// Z_alpha (direct regime) or Z^eps (truncated regime), with the compensator
// drift rate int_{|x|>floor} h d(rho) folded into the recorded values.
StepPath simulate_levy_path(const LevyMeasure& measure, const LimitPathConfig& cfg,
                            const TruncationFn& h, RngStream& rng);

// Euler (left-limit) integral: jumps where the integrator jumps, increment
// f(path(tau-)) * (path(tau) - path(tau-)). Because the simulated paths
// record drift at every event, this rule also carries the inter-event drift
// term f(level) * drift_rate * dt.
StepPath euler_stochastic_integral(const StepPath& path, const std::function<double(double)>& f);

// Floor small enough that the variance of the dropped compensated jumps
// stays below (0.1 * ks_tolerance)^2.
double recommended_jump_floor(double alpha, double ks_tolerance);

}  // namespace stable_limits
