#include "stable_limits/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stable_limits/errors.hpp"

namespace stable_limits {

namespace {

double ks_statistic_sorted(const std::vector<double>& a, const std::vector<double>& b) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double stat = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        stat = std::max(stat, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return stat;
}

double type7_quantile(const std::vector<double>& sorted, double prob) {
    const double pos = (static_cast<double>(sorted.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double ks_critical_coefficient(double level) {
    if (level == 0.05) return 1.358;
    if (level == 0.01) return 1.628;
    throw std::invalid_argument("ks level must be 0.05 or 0.01");
}

KSResult ks_two_sample(std::span<const double> a, std::span<const double> b, double level) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    KSResult r;
    r.statistic = ks_statistic_sorted(sa, sb);
    r.threshold = ks_critical_coefficient(level) * std::sqrt((na + nb) / (na * nb));
    r.pass = r.statistic < r.threshold;
    return r;
}

KSResult ks_two_sample_permutation(std::span<const double> a, std::span<const double> b,
                                   double level, std::size_t permutations, RngStream& rng) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    if (permutations == 0) throw std::invalid_argument("ks_two_sample_permutation: need permutations");
    ks_critical_coefficient(level);  // validates the level

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());

    std::vector<double> stats(permutations);
    std::vector<double> pa(a.size()), pb(b.size());
    for (auto& s : stats) {
        // Fisher-Yates over the pooled values.
        for (std::size_t i = pooled.size() - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i + 1));
            std::swap(pooled[i], pooled[std::min(j, i)]);
        }
        pa.assign(pooled.begin(), pooled.begin() + static_cast<std::ptrdiff_t>(a.size()));
        pb.assign(pooled.begin() + static_cast<std::ptrdiff_t>(a.size()), pooled.end());
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        s = ks_statistic_sorted(pa, pb);
    }
    std::sort(stats.begin(), stats.end());
    const auto idx = static_cast<std::size_t>(
        std::ceil((1.0 - level) * static_cast<double>(permutations))) -
        1;

    KSResult r = ks_two_sample(a, b, level);
    r.threshold = stats[std::min(idx, permutations - 1)];
    r.pass = r.statistic < r.threshold;
    return r;
}

double ecf_distance(std::span<const double> a, std::span<const double> b,
                    std::span<const double> u_grid) {
    if (a.empty() || b.empty() || u_grid.empty())
        throw std::invalid_argument("ecf_distance: empty input");
    double sup = 0.0;
    for (double u : u_grid) {
        double re = 0.0, im = 0.0;
        for (double x : a) {
            re += std::cos(u * x);
            im += std::sin(u * x);
        }
        re /= static_cast<double>(a.size());
        im /= static_cast<double>(a.size());
        double re2 = 0.0, im2 = 0.0;
        for (double x : b) {
            re2 += std::cos(u * x);
            im2 += std::sin(u * x);
        }
        re2 /= static_cast<double>(b.size());
        im2 /= static_cast<double>(b.size());
        sup = std::max(sup, std::hypot(re - re2, im - im2));
    }
    return sup;
}

double hill_estimate(std::span<const double> samples, std::size_t k) {
    std::vector<double> mags;
    mags.reserve(samples.size());
    for (double x : samples)
        if (x != 0.0) mags.push_back(std::abs(x));
    if (k < 1 || k + 1 > mags.size())
        throw std::invalid_argument("hill_estimate: k out of range");
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += std::log(mags[i] / mags[k]);
    if (!(acc > 0.0))
        throw NumericalError("hill_estimate: degenerate sample (zero log-spacings)");
    return static_cast<double>(k) / acc;
}

std::vector<std::pair<double, double>> qq_points(std::span<const double> a,
                                                 std::span<const double> b, std::size_t m) {
    if (a.empty() || b.empty()) throw std::invalid_argument("qq_points: empty input");
    if (m < 2) throw std::invalid_argument("qq_points: m must be >= 2");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(m);
    for (std::size_t j = 1; j <= m; ++j) {
        const double prob = static_cast<double>(j) / static_cast<double>(m + 1);
        out.emplace_back(type7_quantile(sa, prob), type7_quantile(sb, prob));
    }
    return out;
}

}  // namespace stable_limits
