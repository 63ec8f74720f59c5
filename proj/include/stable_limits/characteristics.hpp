#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "stable_limits/functional.hpp"
#include "stable_limits/heavy_tail_model.hpp"
#include "stable_limits/step_path.hpp"

namespace stable_limits {

// Time-indexed characteristics of the pair (Y, Z): drift of the integral
// component, the three quadratic characteristics, and jump-compensator
// integrals of registered test functions.
struct CharTriplet {
    std::vector<double> grid;
    std::vector<double> B1;
    std::vector<double> C11;
    std::vector<double> C12;
    std::vector<double> C22;
    std::map<std::string, std::vector<double>> nu_test_integrals;
};

// Throws when C11/C22 fail nonnegativity/monotonicity or the Cauchy-Schwarz
// bound on C12 is violated beyond floating slack.
void validate_char_triplet(const CharTriplet& ct);

// Cubic Hermite interpolation on a uniform grid; exact at the nodes.
class CubicTable {
public:
    CubicTable() = default;
    CubicTable(double lo, double hi, std::vector<double> values);

    double operator()(double u) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_ = 0.0, hi_ = 0.0, dx_ = 1.0;
    std::vector<double> y_;
    std::vector<double> slope_;
};

// Coefficient tables u -> int K(u, x) rho(dx) for the limit characteristics:
//   drift kernel  int (h(ux) - u h(x)) rho(dx)
//   c11 kernel    int h^2(ux) rho(dx)          ( = |u|^alpha int h^2 drho )
//   c12 kernel    int h(ux) h(x) rho(dx)
// All three vanish at u = 0, which is returned exactly.
class LimitKernelTable {
public:
    static constexpr std::size_t default_points = 2048;

    LimitKernelTable(const LevyMeasure& measure, const TruncationFn& h, double u_bound,
                     std::size_t points = default_points, double abs_tol = 1e-8);

    double drift_kernel(double u) const;
    double c11_kernel(double u) const;
    double c12_kernel(double u) const;
    double c22_rate() const { return c22_rate_; }         // int h^2 drho
    double ga_rate(double a) const;                        // int g_a drho, a in {1,2}
    double u_bound() const { return u_bound_; }

private:
    double u_bound_;
    CubicTable b_, c11_, c12_;
    double c22_rate_;
    double ga1_rate_, ga2_rate_;
};

// int_0^t g(path(s-)) ds for each sorted grid time, exact on the
// piecewise-constant path.
std::vector<double> path_time_integral(const StepPath& path, std::span<const double> grid,
                                       const std::function<double(double)>& g);

// Lemma-style limit characteristics along a realized path: the kernels are
// evaluated at u = f(path(s-)) and integrated in time.
CharTriplet limit_characteristics(const LimitKernelTable& table, const StepPath& path,
                                  const FunctionalF& f, std::span<const double> grid);
CharTriplet limit_characteristics(const LevyMeasure& measure, const StepPath& path,
                                  const FunctionalF& f, const TruncationFn& h,
                                  std::span<const double> grid);

// Test function g_a(x) = (a|x| - 1)^+ /\ 1.
double ga_test_function(double a, double x);

}  // namespace stable_limits
