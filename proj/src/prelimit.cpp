#include "stable_limits/prelimit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stable_limits/errors.hpp"
#include "stable_limits/partial_sum.hpp"

namespace stable_limits {

double PreLimitKernel::expect(const std::function<double(double)>& g, double abs_tol,
                              const std::vector<double>& magnitude_breakpoints) const {
    const double c = centered ? sc.c_n : 0.0;
    const double b_n = sc.b_n;
    return law.expectation([&](double x) { return g(x / b_n - c); }, magnitude_breakpoints,
                           abs_tol);
}

double kernel_expectation(const PreLimitKernel& k, const std::function<double(double)>& g,
                          double t, double abs_tol) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("kernel_expectation: t must lie in [0,1]");
    const auto steps = static_cast<double>(floor_index(k.sc.n, t));
    if (steps == 0.0) return 0.0;
    return steps * k.expect(g, abs_tol);
}

PreLimitKernelTable::PreLimitKernelTable(const PreLimitKernel& k, double u_bound,
                                         std::size_t points, double abs_tol)
    : n_(k.sc.n), u_bound_(std::max(u_bound, 1e-3)) {
    if (points < 8) throw std::invalid_argument("PreLimitKernelTable: too few points");
    const auto& h = k.h;
    const double dn = static_cast<double>(n_);
    // Entries store n * E[...]; the per-atom quadrature runs at abs_tol / n
    // so the scaled entry meets abs_tol.
    const double atom_tol = abs_tol / dn;

    const std::size_t m = points;
    std::vector<double> vb(m), v11(m), v12(m), vmean(m);
    const double step = 2.0 * u_bound_ / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = -u_bound_ + static_cast<double>(i) * step;
        vb[i] = dn * k.expect([&](double y) { return h(u * y) - u * h(y); }, atom_tol);
        v11[i] = dn * k.expect([&](double y) { const double v = h(u * y); return v * v; }, atom_tol);
        v12[i] = dn * k.expect([&](double y) { return h(u * y) * h(y); }, atom_tol);
        vmean[i] = dn * k.expect([&](double y) { return h(u * y); }, atom_tol);
    }
    b_ = CubicTable(-u_bound_, u_bound_, std::move(vb));
    c11_ = CubicTable(-u_bound_, u_bound_, std::move(v11));
    c12_ = CubicTable(-u_bound_, u_bound_, std::move(v12));
    mean_ = CubicTable(-u_bound_, u_bound_, std::move(vmean));

    e_h_ = k.expect([&](double y) { return h(y); }, 1e-12);
    e_h2_ = k.expect([&](double y) { const double v = h(y); return v * v; }, 1e-12);
    ga1_ = k.expect([](double y) { return ga_test_function(1.0, y); }, atom_tol);
    ga2_ = k.expect([](double y) { return ga_test_function(2.0, y); }, atom_tol);
}

double PreLimitKernelTable::drift_kernel(double u) const { return u == 0.0 ? 0.0 : b_(u); }
double PreLimitKernelTable::c11_kernel(double u) const { return u == 0.0 ? 0.0 : c11_(u); }
double PreLimitKernelTable::c12_kernel(double u) const { return u == 0.0 ? 0.0 : c12_(u); }
double PreLimitKernelTable::mean_kernel(double u) const { return u == 0.0 ? 0.0 : mean_(u); }

double PreLimitKernelTable::ga_expect(double a) const {
    if (a == 1.0) return ga1_;
    if (a == 2.0) return ga2_;
    throw std::invalid_argument("PreLimitKernelTable::ga_expect: only a in {1,2} tabulated");
}

CharTriplet path_characteristics(const PreLimitKernelTable& table, const ScalingConstants& sc,
                                 std::span<const double> samples, const FunctionalF& f,
                                 std::span<const double> grid) {
    const std::size_t n = sc.n;
    if (samples.size() != n)
        throw std::invalid_argument("path_characteristics: samples length must equal sc.n");
    const double dn = static_cast<double>(n);
    const double atom_var = table.e_h2() - table.e_h() * table.e_h();

    CharTriplet ct;
    ct.grid.assign(grid.begin(), grid.end());
    const std::size_t m = grid.size();
    ct.B1.resize(m);
    ct.C11.resize(m);
    ct.C12.resize(m);
    ct.C22.resize(m);
    auto& g1 = ct.nu_test_integrals["g1"];
    auto& g2 = ct.nu_test_integrals["g2"];
    g1.resize(m);
    g2.resize(m);

    std::vector<std::size_t> cut(m);
    for (std::size_t kdx = 0; kdx < m; ++kdx) {
        if (kdx > 0 && grid[kdx] < grid[kdx - 1])
            throw std::invalid_argument("path_characteristics: grid must be sorted");
        cut[kdx] = floor_index(n, grid[kdx]);
    }

    double accB = 0.0, acc11 = 0.0, acc12 = 0.0;
    double prefix = 0.0;
    std::size_t kdx = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        while (kdx < m && cut[kdx] == i) {
            const double steps = static_cast<double>(i);
            ct.B1[kdx] = accB;
            ct.C11[kdx] = acc11;
            ct.C12[kdx] = acc12;
            ct.C22[kdx] = steps * atom_var;
            g1[kdx] = steps * table.ga_expect(1.0);
            g2[kdx] = steps * table.ga_expect(2.0);
            ++kdx;
        }
        if (i == n) break;
        const double u = f(prefix);
        const double mean_u = table.mean_kernel(u) / dn;
        accB += table.drift_kernel(u) / dn;
        acc11 += table.c11_kernel(u) / dn - mean_u * mean_u;
        acc12 += table.c12_kernel(u) / dn - mean_u * table.e_h();
        prefix += samples[i] / sc.b_n - sc.c_n;
    }
    validate_char_triplet(ct);
    return ct;
}

CharTriplet path_characteristics(const PreLimitKernel& k, std::span<const double> samples,
                                 const FunctionalF& f, std::span<const double> grid) {
    PreLimitKernelTable table(k, f.bound());
    return path_characteristics(table, k.sc, samples, f, grid);
}

double vague_check(const PreLimitKernel& k, const LevyMeasure& measure,
                   std::span<const double> x_grid) {
    const double dn = static_cast<double>(k.sc.n);
    const double b_n = k.sc.b_n;
    const double floor_x = std::max(0.5, 1.0 / b_n);
    double sup = 0.0;
    for (double x : x_grid) {
        if (!(x >= floor_x * (1.0 - 1e-12)))
            throw std::domain_error("vague_check: grid touches the excluded neighborhood of 0");
        const double pos = dn * k.law.tail_prob(b_n * x, TailSide::positive);
        const double neg = dn * k.law.tail_prob(b_n * x, TailSide::negative);
        sup = std::max(sup, std::abs(pos - measure.tail(x, TailSide::positive)));
        sup = std::max(sup, std::abs(neg - measure.tail(x, TailSide::negative)));
    }
    return sup;
}

std::map<double, double> ca_family_check(const PreLimitKernel& k, const LevyMeasure& measure,
                                         std::span<const double> a_values) {
    if (a_values.empty()) throw std::invalid_argument("ca_family_check: a_values empty");
    const double dn = static_cast<double>(k.sc.n);
    const double b_n = k.sc.b_n;
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::map<double, double> out;
    for (double a : a_values) {
        if (!(a > 0.0)) throw std::invalid_argument("ca_family_check: a must be positive");
        auto ga = [a](double y) { return ga_test_function(a, y); };
        // Left side against n F_n (the uncentered scaled law), tolerance
        // tightened so the n-fold scaling stays within 1e-9.
        const std::vector<double> bp{b_n / a, 2.0 * b_n / a};
        const double lhs =
            dn * k.law.expectation([&](double x) { return ga(x / b_n); }, bp,
                                   std::min(1e-10, 1e-9 / dn));
        const double rhs = measure.integrate(ga, -inf, inf, {1.0 / a, 2.0 / a}, 1e-10);
        out[a] = std::abs(lhs - rhs);
    }
    return out;
}

}  // namespace stable_limits
