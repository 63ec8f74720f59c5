#pragma once

#include <functional>
#include <vector>

namespace stable_limits {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    std::size_t max_intervals = 200000;
};

// Globally adaptive Gauss-Kronrod (G7/K15) on [a, b]. Splits the interval
// with the largest error estimate until the summed estimate meets abs_tol.
// Throws NumericalError when the budget is exhausted (non-convergence, e.g.
// a non-integrable singularity).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Same, seeding the refinement queue with [pts[0],pts[1]], [pts[1],pts[2]], ...
// Known integrand kinks should be passed as interior points.
double integrate_segments(const std::function<double(double)>& f,
                          const std::vector<double>& pts,
                          const QuadratureOptions& opt = {});

}  // namespace stable_limits
