#include "stable_limits/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stable_limits/errors.hpp"

namespace stable_limits {

double ga_test_function(double a, double x) {
    return std::min(std::max(a * std::abs(x) - 1.0, 0.0), 1.0);
}

void validate_char_triplet(const CharTriplet& ct) {
    const std::size_t m = ct.grid.size();
    if (ct.B1.size() != m || ct.C11.size() != m || ct.C12.size() != m || ct.C22.size() != m)
        throw std::invalid_argument("CharTriplet: ragged columns");
    double prev11 = 0.0, prev22 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double slack = 1e-9 * (1.0 + std::abs(ct.C11[i]) + std::abs(ct.C22[i]));
        if (ct.C11[i] < -slack || ct.C22[i] < -slack)
            throw NumericalError("CharTriplet: negative quadratic characteristic");
        if (ct.C11[i] < prev11 - slack || ct.C22[i] < prev22 - slack)
            throw NumericalError("CharTriplet: quadratic characteristic not nondecreasing");
        const double bound = std::sqrt(std::max(ct.C11[i], 0.0) * std::max(ct.C22[i], 0.0));
        if (std::abs(ct.C12[i]) > bound * (1.0 + 1e-6) + 1e-9)
            throw NumericalError("CharTriplet: Cauchy-Schwarz bound violated");
        prev11 = std::max(prev11, ct.C11[i]);
        prev22 = std::max(prev22, ct.C22[i]);
    }
}

CubicTable::CubicTable(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), y_(std::move(values)) {
    if (y_.size() < 4) throw std::invalid_argument("CubicTable: need at least 4 nodes");
    if (!(hi_ > lo_)) throw std::invalid_argument("CubicTable: empty range");
    dx_ = (hi_ - lo_) / static_cast<double>(y_.size() - 1);
    slope_.resize(y_.size());
    const std::size_t n = y_.size();
    slope_[0] = (y_[1] - y_[0]) / dx_;
    slope_[n - 1] = (y_[n - 1] - y_[n - 2]) / dx_;
    for (std::size_t i = 1; i + 1 < n; ++i) slope_[i] = (y_[i + 1] - y_[i - 1]) / (2.0 * dx_);
}

double CubicTable::operator()(double u) const {
    const double slack = 1e-9 * (hi_ - lo_);
    if (u < lo_ - slack || u > hi_ + slack)
        throw std::logic_error("CubicTable: query outside the tabulated range");
    u = std::clamp(u, lo_, hi_);
    auto cell = static_cast<std::size_t>((u - lo_) / dx_);
    cell = std::min(cell, y_.size() - 2);
    const double t = (u - (lo_ + static_cast<double>(cell) * dx_)) / dx_;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[cell] + h10 * dx_ * slope_[cell] + h01 * y_[cell + 1] +
           h11 * dx_ * slope_[cell + 1];
}

LimitKernelTable::LimitKernelTable(const LevyMeasure& measure, const TruncationFn& h,
                                   double u_bound, std::size_t points, double abs_tol)
    : u_bound_(std::max(u_bound, 1e-3)) {
    if (points < 8 || points % 2 != 0)
        throw std::invalid_argument("LimitKernelTable: points must be even and >= 8");
    const double r0 = TruncationFn::inner_radius;
    const double r1 = TruncationFn::outer_radius;

    auto breaks_for = [&](double au) {
        std::vector<double> bp{r0, r1};
        if (au > 0.0) {
            bp.push_back(r0 / au);
            bp.push_back(r1 / au);
        }
        return bp;
    };

    // The drift integrand vanishes identically on |x| <= r0 min(1, 1/|u|),
    // so the integral is taken on the exact support (safe for alpha >= 1).
    auto drift_entry = [&](double u) {
        const double au = std::abs(u);
        if (au == 0.0) return 0.0;
        const double lo = r0 * std::min(1.0, 1.0 / au);
        const double hi = r1 * std::max(1.0, 1.0 / au);
        auto g = [&](double x) { return h(u * x) - u * h(x); };
        const auto bp = breaks_for(au);
        return measure.integrate(g, lo, hi, bp, abs_tol) +
               measure.integrate(g, -hi, -lo, bp, abs_tol);
    };
    auto c11_entry = [&](double u) {
        const double au = std::abs(u);
        if (au == 0.0) return 0.0;
        const double hi = r1 / au;
        auto g = [&](double x) { const double v = h(u * x); return v * v; };
        return measure.integrate(g, -hi, hi, breaks_for(au), abs_tol);
    };
    auto c12_entry = [&](double u) {
        const double au = std::abs(u);
        if (au == 0.0) return 0.0;
        auto g = [&](double x) { return h(u * x) * h(x); };
        return measure.integrate(g, -r1, r1, breaks_for(au), abs_tol);
    };

    const std::size_t n = points;
    std::vector<double> vb(n), v11(n), v12(n);
    const double step = 2.0 * u_bound_ / static_cast<double>(n - 1);
    // Fill the u >= 0 half and mirror: the drift and c12 kernels are odd in
    // u, the c11 kernel is even (h odd, h^2 even).
    for (std::size_t i = n / 2; i < n; ++i) {
        const double u = -u_bound_ + static_cast<double>(i) * step;
        vb[i] = drift_entry(u);
        v11[i] = c11_entry(u);
        v12[i] = c12_entry(u);
        const std::size_t j = n - 1 - i;
        vb[j] = -vb[i];
        v11[j] = v11[i];
        v12[j] = -v12[i];
    }
    b_ = CubicTable(-u_bound_, u_bound_, std::move(vb));
    c11_ = CubicTable(-u_bound_, u_bound_, std::move(v11));
    c12_ = CubicTable(-u_bound_, u_bound_, std::move(v12));

    auto h2 = [&](double x) { const double v = h(x); return v * v; };
    c22_rate_ = measure.integrate(h2, -r1, r1, {r0, r1}, abs_tol);
    ga1_rate_ = measure.integrate([](double x) { return ga_test_function(1.0, x); },
                                  -std::numeric_limits<double>::infinity(),
                                  std::numeric_limits<double>::infinity(), {1.0, 2.0}, abs_tol);
    ga2_rate_ = measure.integrate([](double x) { return ga_test_function(2.0, x); },
                                  -std::numeric_limits<double>::infinity(),
                                  std::numeric_limits<double>::infinity(), {0.5, 1.0}, abs_tol);
}

double LimitKernelTable::drift_kernel(double u) const { return u == 0.0 ? 0.0 : b_(u); }
double LimitKernelTable::c11_kernel(double u) const { return u == 0.0 ? 0.0 : c11_(u); }
double LimitKernelTable::c12_kernel(double u) const { return u == 0.0 ? 0.0 : c12_(u); }

double LimitKernelTable::ga_rate(double a) const {
    if (a == 1.0) return ga1_rate_;
    if (a == 2.0) return ga2_rate_;
    throw std::invalid_argument("LimitKernelTable::ga_rate: only a in {1,2} tabulated");
}

std::vector<double> path_time_integral(const StepPath& path, std::span<const double> grid,
                                       const std::function<double(double)>& g) {
    std::vector<double> out(grid.size());
    double acc = 0.0;
    double level = path.initial_value();
    double g_level = g(level);
    double t_prev = 0.0;
    std::size_t e = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k];
        if (!(t >= t_prev && t <= 1.0))
            throw std::invalid_argument("path_time_integral: grid must be sorted in [0,1]");
        while (e < path.event_count() && path.time(e) <= t) {
            acc += g_level * (path.time(e) - t_prev);
            t_prev = path.time(e);
            level = path.value(e);
            g_level = g(level);
            ++e;
        }
        out[k] = acc + g_level * (t - t_prev);
    }
    return out;
}

CharTriplet limit_characteristics(const LimitKernelTable& table, const StepPath& path,
                                  const FunctionalF& f, std::span<const double> grid) {
    CharTriplet ct;
    ct.grid.assign(grid.begin(), grid.end());
    ct.B1 = path_time_integral(path, grid, [&](double lv) { return table.drift_kernel(f(lv)); });
    ct.C11 = path_time_integral(path, grid, [&](double lv) { return table.c11_kernel(f(lv)); });
    ct.C12 = path_time_integral(path, grid, [&](double lv) { return table.c12_kernel(f(lv)); });
    ct.C22.resize(grid.size());
    auto& g1 = ct.nu_test_integrals["g1"];
    auto& g2 = ct.nu_test_integrals["g2"];
    g1.resize(grid.size());
    g2.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        ct.C22[k] = grid[k] * table.c22_rate();
        g1[k] = grid[k] * table.ga_rate(1.0);
        g2[k] = grid[k] * table.ga_rate(2.0);
    }
    validate_char_triplet(ct);
    return ct;
}

CharTriplet limit_characteristics(const LevyMeasure& measure, const StepPath& path,
                                  const FunctionalF& f, const TruncationFn& h,
                                  std::span<const double> grid) {
    LimitKernelTable table(measure, h, f.bound());
    return limit_characteristics(table, path, f, grid);
}

}  // namespace stable_limits
