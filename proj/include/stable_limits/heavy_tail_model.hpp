#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stable_limits/rng.hpp"

namespace stable_limits {

enum class TailSide { positive, negative, absolute };
enum class TruncationShape { taper, hard };

// Truncation function h: identity near 0, vanishing outside the unit ball.
//   taper: h(x) = x on |x| <= 1/2, sign(x)*(1-|x|) on 1/2 < |x| <= 1, 0 beyond.
//   hard:  h(x) = x * 1_{|x| <= 1}.
class TruncationFn {
public:
    static constexpr double inner_radius = 0.5;
    static constexpr double outer_radius = 1.0;

    explicit TruncationFn(TruncationShape shape = TruncationShape::taper) : shape_(shape) {}

    TruncationShape shape() const { return shape_; }

    double operator()(double x) const;

    // Closed form of J(m) = int_m^1 h(u) u^{-alpha-1} du for this shape.
    // Requires m > 0 when alpha >= 1 (the integral diverges at 0 there).
    double power_tail_integral(double alpha, double m) const;

    // Interior kink locations of h on (0, 1]; used as quadrature breakpoints.
    std::vector<double> positive_breakpoints() const;

private:
    TruncationShape shape_;
};

inline double truncation_eval(const TruncationFn& h, double x) { return h(x); }

// Two-sided Pareto law with support |x| >= 1:
//   P(X > x) = p x^{-alpha},  P(X < -x) = q x^{-alpha}   for x >= 1,
// so that n P(|X| > b_n x) = x^{-alpha} exactly under b_n = n^{1/alpha}.
class TailLaw {
public:
    static constexpr double support_floor = 1.0;

    TailLaw(double alpha, double p);

    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double q() const { return 1.0 - p_; }

    // Exact tail probability; x must be >= support_floor.
    double tail_prob(double x, TailSide side) const;

    // Lebesgue density at x (0 inside the unit ball).
    double density(double x) const;

    // Inverse transform of the magnitude tail: u in (0,1] -> u^{-1/alpha}.
    double quantile_magnitude(double u) const;

    double sample(RngStream& rng) const;

    // E[phi(X)] by adaptive quadrature, exact power-tail substitution on each
    // side. `magnitude_breakpoints` lists |x| values (>= 1) where phi kinks.
    double expectation(const std::function<double(double)>& phi,
                       const std::vector<double>& magnitude_breakpoints = {},
                       double abs_tol = 1e-10) const;

private:
    double alpha_;
    double p_;
};

std::vector<double> sample_tail_law(const TailLaw& law, std::size_t count, RngStream& rng);

// Levy measure with rho((x,inf]) = p x^{-alpha}, rho([-inf,-x)) = q x^{-alpha},
// density alpha p x^{-alpha-1} on (0,inf) and alpha q |x|^{-alpha-1} on (-inf,0).
class LevyMeasure {
public:
    LevyMeasure(double alpha, double p);

    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double q() const { return 1.0 - p_; }

    // rho mass beyond x (side-resolved); x must be > 0.
    double tail(double x, TailSide side) const;

    double density(double x) const;

    // int g d(rho) over [lo, hi] (infinite endpoints allowed). The caller
    // guarantees integrability: g = O(x^2) near 0 or the domain excludes 0.
    double integrate(const std::function<double(double)>& g, double lo, double hi,
                     const std::vector<double>& magnitude_breakpoints = {},
                     double abs_tol = 1e-10) const;

private:
    double alpha_;
    double p_;
};

double rho_integrate(const LevyMeasure& measure, const std::function<double(double)>& g,
                     double lo, double hi, double abs_tol = 1e-10);

struct ScalingConstants {
    std::size_t n = 0;
    double b_n = 1.0;
    double c_n = 0.0;
};

// b_n = inf{x > 0 : n P(|X| > x) <= 1} = n^{1/alpha} for this law.
double normalizer_bn(const TailLaw& law, std::size_t n);

// c_n = E[h(X/b_n)], closed form: (p - q) * (alpha/n) * J(1/b_n).
double centering_cn(const TailLaw& law, std::size_t n, const TruncationFn& h);

// Centering of the eps-truncated summand E[h((X/b_n) 1{...})]. With
// scaled_threshold the indicator is 1{|X/b_n| >= eps} (default); otherwise
// 1{|X| >= eps}, which never triggers below the support floor.
double truncated_centering(const TailLaw& law, std::size_t n, const TruncationFn& h,
                           double eps, bool scaled_threshold = true);

ScalingConstants make_scaling_constants(const TailLaw& law, std::size_t n, const TruncationFn& h);

// int_{|x| > m} h d(rho) = (p - q) * alpha * J(m); the compensator drift rate
// of the jump-truncated limit process.
double levy_drift_rate(const LevyMeasure& measure, const TruncationFn& h, double m);

// Variance of the dropped compensated small jumps: alpha/(2-alpha) * m^{2-alpha}.
double small_jump_variance(double alpha, double m);

}  // namespace stable_limits
