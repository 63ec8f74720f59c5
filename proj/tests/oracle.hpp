// Test-only oracles, independent of the library's quadrature path:
// adaptive Simpson on explicit segment lists, log-substitution for power-law
// tails, and brute-force Monte Carlo helpers.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double eps = 1e-11, int depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, eps, depth);
}

inline double simpson_segments(const std::function<double(double)>& f, std::vector<double> pts,
                               double eps = 1e-11) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += simpson(f, pts[i], pts[i + 1], eps);
    return total;
}

// One-sided integral of g against the power-law density alpha*w*x^{-alpha-1}
// over [a, inf), via x = e^y. g must be bounded.
inline double power_tail_integral(double alpha, double w, const std::function<double(double)>& g,
                                  double a, std::vector<double> kinks = {}) {
    if (!(a > 0.0)) throw std::invalid_argument("power_tail_integral: a must be > 0");
    const double y_hi = std::log(a) + 40.0 / alpha;
    std::vector<double> pts{std::log(a)};
    for (double k : kinks)
        if (k > a && std::log(k) < y_hi) pts.push_back(std::log(k));
    pts.push_back(y_hi);
    std::sort(pts.begin(), pts.end());
    auto integrand = [&](double y) { return g(std::exp(y)) * std::exp(-alpha * y); };
    return alpha * w * simpson_segments(integrand, pts);
}

// Two-sided rho integral over |x| >= a (g bounded).
inline double rho_tail_integral(double alpha, double p, const std::function<double(double)>& g,
                                double a, std::vector<double> kinks = {}) {
    return power_tail_integral(alpha, p, g, a, kinks) +
           power_tail_integral(alpha, 1.0 - p, [&](double x) { return g(-x); }, a, kinks);
}

// Bisection solve of n * x^{-alpha} = 1 on [1, hi].
inline double solve_bn(double alpha, double n, double hi = 1e12) {
    double lo = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (n * std::pow(mid, -alpha) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct MeanAndError {
    double mean;
    double sigma;  // standard error of the mean
};

template <typename Fn>
MeanAndError monte_carlo_mean(std::size_t count, Fn&& draw) {
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double v = draw();
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / static_cast<double>(count);
    const double var = acc2 / static_cast<double>(count) - mean * mean;
    return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(count))};
}

}  // namespace oracle
