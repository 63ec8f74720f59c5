#include "stable_limits/heavy_tail_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stable_limits/errors.hpp"
#include "stable_limits/quadrature.hpp"

namespace stable_limits {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_tail_params(double alpha, double p) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("tail index alpha must lie in (0,2)");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("tail weight p must lie in [0,1]");
}

// int_a^b u^{-alpha} du
double power_integral_m0(double alpha, double a, double b) {
    if (std::abs(alpha - 1.0) < 1e-9) return std::log(b / a);
    return (std::pow(b, 1.0 - alpha) - std::pow(a, 1.0 - alpha)) / (1.0 - alpha);
}

// int_a^b u^{-alpha-1} du
double power_integral_m1(double alpha, double a, double b) {
    return (std::pow(a, -alpha) - std::pow(b, -alpha)) / alpha;
}

}  // namespace

double TruncationFn::operator()(double x) const {
    const double ax = std::abs(x);
    if (shape_ == TruncationShape::hard) return ax <= outer_radius ? x : 0.0;
    if (ax <= inner_radius) return x;
    if (ax <= outer_radius) return std::copysign(1.0 - ax, x);
    return 0.0;
}

double TruncationFn::power_tail_integral(double alpha, double m) const {
    if (!(m >= 0.0 && m <= 1.0)) throw std::domain_error("power_tail_integral: m must lie in [0,1]");
    if (m == 0.0 && alpha >= 1.0)
        throw std::domain_error("power_tail_integral: diverges at m=0 for alpha >= 1");
    if (m >= 1.0) return 0.0;
    if (shape_ == TruncationShape::hard) return power_integral_m0(alpha, m, 1.0);
    double total = 0.0;
    if (m < inner_radius) total += power_integral_m0(alpha, m, inner_radius);
    const double lo = std::max(m, inner_radius);
    // int (1-u) u^{-alpha-1} du over the taper band
    total += power_integral_m1(alpha, lo, 1.0) - power_integral_m0(alpha, lo, 1.0);
    return total;
}

std::vector<double> TruncationFn::positive_breakpoints() const {
    if (shape_ == TruncationShape::hard) return {outer_radius};
    return {inner_radius, outer_radius};
}

TailLaw::TailLaw(double alpha, double p) : alpha_(alpha), p_(p) { check_tail_params(alpha, p); }

double TailLaw::tail_prob(double x, TailSide side) const {
    if (!(x >= support_floor))
        throw std::domain_error("tail_prob: x below the support floor");
    const double t = std::pow(x, -alpha_);
    switch (side) {
        case TailSide::positive: return p_ * t;
        case TailSide::negative: return q() * t;
        case TailSide::absolute: return t;
    }
    return 0.0;
}

double TailLaw::density(double x) const {
    const double ax = std::abs(x);
    if (ax < support_floor) return 0.0;
    const double w = x > 0.0 ? p_ : q();
    return alpha_ * w * std::pow(ax, -alpha_ - 1.0);
}

double TailLaw::quantile_magnitude(double u) const {
    if (!(u > 0.0 && u <= 1.0)) throw std::domain_error("quantile_magnitude: u must lie in (0,1]");
    return std::pow(u, -1.0 / alpha_);
}

double TailLaw::sample(RngStream& rng) const {
    const double sign = rng.bernoulli(p_) ? 1.0 : -1.0;
    return sign * std::exp(-std::log(rng.uniform01()) / alpha_);
}

double TailLaw::expectation(const std::function<double(double)>& phi,
                            const std::vector<double>& magnitude_breakpoints,
                            double abs_tol) const {
    // One-sided substitution v = x^{-alpha} maps the tail measure to
    // Lebesgue on (0,1]:  int_1^inf phi(x) alpha x^{-alpha-1} dx
    //                   = int_0^1 phi(v^{-1/alpha}) dv.
    std::vector<double> pts{0.0};
    for (double bp : magnitude_breakpoints) {
        if (bp > 1.0 && std::isfinite(bp)) pts.push_back(std::pow(bp, -alpha_));
    }
    pts.push_back(1.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    QuadratureOptions opt;
    opt.abs_tol = abs_tol / 2.0;
    const double inv_alpha = 1.0 / alpha_;
    double total = 0.0;
    if (p_ > 0.0) {
        total += p_ * integrate_segments(
                          [&](double v) { return phi(std::pow(v, -inv_alpha)); }, pts, opt);
    }
    if (q() > 0.0) {
        total += q() * integrate_segments(
                           [&](double v) { return phi(-std::pow(v, -inv_alpha)); }, pts, opt);
    }
    return total;
}

std::vector<double> sample_tail_law(const TailLaw& law, std::size_t count, RngStream& rng) {
    if (count == 0) throw std::invalid_argument("sample_tail_law: count must be >= 1");
    std::vector<double> out(count);
    for (auto& x : out) x = law.sample(rng);
    return out;
}

LevyMeasure::LevyMeasure(double alpha, double p) : alpha_(alpha), p_(p) {
    check_tail_params(alpha, p);
}

double LevyMeasure::tail(double x, TailSide side) const {
    if (!(x > 0.0)) throw std::domain_error("LevyMeasure::tail: x must be > 0");
    const double t = std::pow(x, -alpha_);
    switch (side) {
        case TailSide::positive: return p_ * t;
        case TailSide::negative: return q() * t;
        case TailSide::absolute: return t;
    }
    return 0.0;
}

double LevyMeasure::density(double x) const {
    if (x == 0.0) return kInf;
    const double w = x > 0.0 ? p_ : q();
    return alpha_ * w * std::pow(std::abs(x), -alpha_ - 1.0);
}

double LevyMeasure::integrate(const std::function<double(double)>& g, double lo, double hi,
                              const std::vector<double>& magnitude_breakpoints,
                              double abs_tol) const {
    if (!(lo <= hi)) throw std::invalid_argument("LevyMeasure::integrate: lo > hi");
    QuadratureOptions opt;
    opt.abs_tol = abs_tol / 4.0;
    const double inv_alpha = 1.0 / alpha_;

    // One side of the measure over magnitudes (a, b], 0 <= a < b <= inf.
    // Splits at |x| = 1: x-space below (handles the g = O(x^2) region),
    // v = x^{-alpha} substitution above (finite even for b = inf).
    auto one_side = [&](double a, double b, double weight, double sgn) -> double {
        if (weight <= 0.0 || a >= b) return 0.0;
        double total = 0.0;
        const double split = std::min(b, 1.0);
        if (a < split) {
            std::vector<double> pts{a};
            for (double bp : magnitude_breakpoints)
                if (bp > a && bp < split) pts.push_back(bp);
            pts.push_back(split);
            std::sort(pts.begin(), pts.end());
            total += weight * alpha_ *
                     integrate_segments(
                         [&](double x) {
                             const double gv = g(sgn * x);
                             // Avoid 0 * inf when the density overflows where g vanishes.
                             return gv == 0.0 ? 0.0 : gv * std::pow(x, -alpha_ - 1.0);
                         },
                         pts, opt);
        }
        if (b > split) {
            const double v_hi = std::pow(split, -alpha_);
            const double v_lo = std::isfinite(b) ? std::pow(b, -alpha_) : 0.0;
            std::vector<double> pts{v_lo};
            for (double bp : magnitude_breakpoints)
                if (bp > split && std::isfinite(bp)) {
                    const double v = std::pow(bp, -alpha_);
                    if (v > v_lo && v < v_hi) pts.push_back(v);
                }
            pts.push_back(v_hi);
            std::sort(pts.begin(), pts.end());
            total += weight * integrate_segments(
                                  [&](double v) { return g(sgn * std::pow(v, -inv_alpha)); }, pts, opt);
        }
        return total;
    };

    double total = 0.0;
    if (hi > 0.0) total += one_side(std::max(lo, 0.0), hi, p_, 1.0);
    if (lo < 0.0) total += one_side(std::max(-hi, 0.0), -lo, q(), -1.0);
    return total;
}

double rho_integrate(const LevyMeasure& measure, const std::function<double(double)>& g,
                     double lo, double hi, double abs_tol) {
    return measure.integrate(g, lo, hi, {}, abs_tol);
}

double normalizer_bn(const TailLaw& law, std::size_t n) {
    if (n == 0) throw std::invalid_argument("normalizer_bn: n must be >= 1");
    return std::pow(static_cast<double>(n), 1.0 / law.alpha());
}

double centering_cn(const TailLaw& law, std::size_t n, const TruncationFn& h) {
    const double b_n = normalizer_bn(law, n);
    const double skew = law.p() - law.q();
    if (skew == 0.0) return 0.0;
    return skew * (law.alpha() / static_cast<double>(n)) *
           h.power_tail_integral(law.alpha(), 1.0 / b_n);
}

double truncated_centering(const TailLaw& law, std::size_t n, const TruncationFn& h,
                           double eps, bool scaled_threshold) {
    if (!(eps > 0.0 && eps < TruncationFn::inner_radius))
        throw std::invalid_argument("truncated_centering: eps must lie in (0, 1/2)");
    if (!scaled_threshold) {
        // Threshold on the raw variable: |X| >= eps always holds on the
        // support, so the truncation is inert.
        return centering_cn(law, n, h);
    }
    const double b_n = normalizer_bn(law, n);
    const double skew = law.p() - law.q();
    if (skew == 0.0) return 0.0;
    const double m = std::max(1.0 / b_n, eps);
    return skew * (law.alpha() / static_cast<double>(n)) * h.power_tail_integral(law.alpha(), m);
}

ScalingConstants make_scaling_constants(const TailLaw& law, std::size_t n, const TruncationFn& h) {
    return {n, normalizer_bn(law, n), centering_cn(law, n, h)};
}

double levy_drift_rate(const LevyMeasure& measure, const TruncationFn& h, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("levy_drift_rate: floor must be > 0");
    if (m >= TruncationFn::outer_radius) return 0.0;
    const double skew = measure.p() - measure.q();
    if (skew == 0.0) return 0.0;
    return skew * measure.alpha() * h.power_tail_integral(measure.alpha(), m);
}

double small_jump_variance(double alpha, double m) {
    return alpha / (2.0 - alpha) * std::pow(m, 2.0 - alpha);
}

}  // namespace stable_limits
