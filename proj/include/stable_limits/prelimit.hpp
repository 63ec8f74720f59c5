#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "stable_limits/characteristics.hpp"
#include "stable_limits/functional.hpp"
#include "stable_limits/heavy_tail_model.hpp"

namespace stable_limits {

// Realization of the jump compensator of the scaled partial-sum array: an
// atom at each time i/n carrying the law of X_1/b_n - c_n (centered, the
// default) or of X_1/b_n (uncentered variant, for A/B comparison).
struct PreLimitKernel {
    TailLaw law;
    ScalingConstants sc;
    TruncationFn h;
    bool centered = true;

    // E[g(X_{n,1})] against the kernel's per-atom law.
    double expect(const std::function<double(double)>& g, double abs_tol = 1e-10,
                  const std::vector<double>& magnitude_breakpoints = {}) const;
};

// [nt] * E[g(X_{n,1})]: the compensator integral of g up to time t.
double kernel_expectation(const PreLimitKernel& k, const std::function<double(double)>& g,
                          double t, double abs_tol = 1e-10);

// Per-atom coefficient kernels scaled by n (so entries are O(1) like the
// limit kernels and share the interpolation grid/error profile):
//   drift  n E[h(uX) - u h(X)]
//   c11    n E[h^2(uX)]
//   c12    n E[h(uX) h(X)]
//   mean   n E[h(uX)]       (atomic-correction kernel)
class PreLimitKernelTable {
public:
    PreLimitKernelTable(const PreLimitKernel& k, double u_bound,
                        std::size_t points = LimitKernelTable::default_points,
                        double abs_tol = 1e-8);

    double drift_kernel(double u) const;   // already scaled by n
    double c11_kernel(double u) const;
    double c12_kernel(double u) const;
    double mean_kernel(double u) const;
    double e_h() const { return e_h_; }     // E[h(X_{n,1})]
    double e_h2() const { return e_h2_; }   // E[h^2(X_{n,1})]
    double ga_expect(double a) const;       // E[g_a(X_{n,1})]
    std::size_t n() const { return n_; }

private:
    std::size_t n_;
    double u_bound_;
    CubicTable b_, c11_, c12_, mean_;
    double e_h_, e_h2_, ga1_, ga2_;
};

// The displayed pre-limit characteristics of (Y~_n, S~_n), atomic
// correction terms included, evaluated at the sorted grid times.
CharTriplet path_characteristics(const PreLimitKernelTable& table, const ScalingConstants& sc,
                                 std::span<const double> samples, const FunctionalF& f,
                                 std::span<const double> grid);
CharTriplet path_characteristics(const PreLimitKernel& k, std::span<const double> samples,
                                 const FunctionalF& f, std::span<const double> grid);

// sup over the grid of |n P(X_1/b_n > x) - rho((x,inf])| and the mirrored
// negative-tail quantity. Grid points must satisfy x >= max(1/2, 1/b_n).
double vague_check(const PreLimitKernel& k, const LevyMeasure& measure,
                   std::span<const double> x_grid);

// a -> | int g_a d(n F_n) - int g_a d(rho) |, both sides by quadrature.
std::map<double, double> ca_family_check(const PreLimitKernel& k, const LevyMeasure& measure,
                                         std::span<const double> a_values);

}  // namespace stable_limits
