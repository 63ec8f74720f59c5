#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracle.hpp"
#include "stable_limits/errors.hpp"
#include "stable_limits/heavy_tail_model.hpp"
#include "stable_limits/quadrature.hpp"

using namespace stable_limits;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994531;
}  // namespace

TEST_CASE("adaptive quadrature against reference integrals") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, 3.141592653589793) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // integrable endpoint singularity x^{-1/2}
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                    {1e-10, 2000000}) == doctest::Approx(2.0).epsilon(1e-8));
    // step discontinuity
    CHECK(integrate([](double x) { return x < 0.3 ? 1.0 : 2.0; }, 0.0, 1.0) ==
          doctest::Approx(1.7).epsilon(1e-10));
    // non-integrable singularity must be detected, not silently summed
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0), NumericalError);
}

TEST_CASE("tail_prob closed forms") {
    const TailLaw law(0.5, 0.7);
    CHECK(law.tail_prob(1.0, TailSide::positive) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(law.tail_prob(1.0, TailSide::negative) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(law.tail_prob(1.0, TailSide::absolute) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(law.tail_prob(4.0, TailSide::absolute) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(law.tail_prob(0.99, TailSide::positive), std::domain_error);
    CHECK_THROWS_AS(TailLaw(2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(TailLaw(0.5, 1.5), std::invalid_argument);
}

TEST_CASE("inverse transform sampling") {
    const TailLaw one_sided(1.0, 1.0);
    CHECK(one_sided.quantile_magnitude(0.25) == doctest::Approx(4.0).epsilon(1e-15));

    SUBCASE("sign frequency is p and independent of magnitude") {
        const TailLaw law(0.8, 0.5);
        RngStream rng(123);
        const std::size_t count = 1000000;
        std::size_t positive = 0;
        for (std::size_t i = 0; i < count; ++i)
            if (law.sample(rng) > 0.0) ++positive;
        const double freq = static_cast<double>(positive) / static_cast<double>(count);
        const double sigma = std::sqrt(0.25 / static_cast<double>(count));
        CHECK(std::abs(freq - 0.5) <= 3.0 * sigma);
    }

    SUBCASE("tail frequency matches the closed form") {
        const TailLaw law(1.5, 0.7);
        RngStream rng(99);
        const std::size_t count = 1000000;
        std::size_t above = 0;
        for (std::size_t i = 0; i < count; ++i)
            if (law.sample(rng) > 2.0) ++above;
        const double freq = static_cast<double>(above) / static_cast<double>(count);
        const double expect = 0.7 * std::pow(2.0, -1.5);
        const double sigma = std::sqrt(expect * (1.0 - expect) / static_cast<double>(count));
        CHECK(std::abs(freq - expect) <= 3.0 * sigma);
    }

    SUBCASE("empirical tail within the stated binomial band at several x") {
        const TailLaw law(0.8, 0.6);
        RngStream rng(2024);
        const std::size_t count = 1000000;
        std::vector<double> draws = sample_tail_law(law, count, rng);
        for (double x : {1.5, 3.0, 10.0}) {
            std::size_t above = 0;
            for (double d : draws)
                if (d > x) ++above;
            const double freq = static_cast<double>(above) / static_cast<double>(count);
            const double expect = law.tail_prob(x, TailSide::positive);
            CHECK(std::abs(freq - expect) <=
                  4.0 * std::sqrt(expect / static_cast<double>(count)));
        }
        for (double d : draws) REQUIRE(std::abs(d) >= 1.0);
    }
}

TEST_CASE("normalizer b_n") {
    const TailLaw law(0.5, 1.0);
    CHECK(normalizer_bn(law, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normalizer_bn(law, 100) == doctest::Approx(10000.0).epsilon(1e-12));
    // independent root-find oracle for n P(|X| > x) = 1
    CHECK(normalizer_bn(law, 100) == doctest::Approx(oracle::solve_bn(0.5, 100.0)).epsilon(1e-9));
    const TailLaw law2(1.3, 0.4);
    CHECK(normalizer_bn(law2, 977) ==
          doctest::Approx(oracle::solve_bn(1.3, 977.0)).epsilon(1e-9));
    double prev = 0.0;
    for (std::size_t n = 1; n <= 64; ++n) {
        const double b = normalizer_bn(law2, n);
        CHECK(b > prev);
        prev = b;
    }
    // exact tail identity at b_n
    for (std::size_t n : {2ul, 10ul, 1000ul})
        CHECK(static_cast<double>(n) * law2.tail_prob(normalizer_bn(law2, n), TailSide::absolute) ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("truncation function shapes") {
    const TruncationFn taper(TruncationShape::taper);
    const TruncationFn hard(TruncationShape::hard);
    CHECK(taper(0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(taper(0.75) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(taper(-0.75) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(taper(2.0) == 0.0);
    CHECK(hard(2.0) == 0.0);
    CHECK(hard(0.75) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(taper(1.0) == doctest::Approx(0.0));

    SUBCASE("sandwich |h| <= |x| 1_{|x|<=1} and identity below 1/2") {
        for (int i = 0; i <= 10000; ++i) {
            const double x = -3.0 + 6.0 * static_cast<double>(i) / 10000.0;
            for (const auto* h : {&taper, &hard}) {
                const double v = (*h)(x);
                REQUIRE(std::abs(v) <= std::abs(x) * (std::abs(x) <= 1.0 ? 1.0 : 0.0) + 1e-15);
                if (std::abs(x) <= 0.5) REQUIRE(v == x);
            }
        }
    }
}

TEST_CASE("centering constant c_n") {
    const TruncationFn taper(TruncationShape::taper);

    SUBCASE("symmetric law centers to zero") {
        const TailLaw law(0.7, 0.5);
        CHECK(std::abs(centering_cn(law, 50, taper)) <= 1e-10);
    }
    SUBCASE("n = 1 vanishes (h = 0 on the support)") {
        const TailLaw law(0.5, 1.0);
        CHECK(std::abs(centering_cn(law, 1, taper)) <= 1e-15);
        const TruncationFn hard(TruncationShape::hard);
        CHECK(std::abs(centering_cn(law, 1, hard)) <= 1e-15);
    }
    SUBCASE("closed form agrees with the library quadrature") {
        for (double alpha : {0.5, 0.8, 1.2}) {
            for (std::size_t n : {2ul, 10ul, 1000ul}) {
                const TailLaw law(alpha, 0.75);
                const double b_n = normalizer_bn(law, n);
                const double quad = law.expectation(
                    [&](double x) { return taper(x / b_n); },
                    {0.5 * b_n, b_n});
                CHECK(centering_cn(law, n, taper) == doctest::Approx(quad).epsilon(1e-9));
            }
        }
    }
    SUBCASE("one-sided law: strictly positive, below 1, matches Monte Carlo") {
        const TailLaw law(0.5, 1.0);
        const std::size_t n = 100;
        const double c = centering_cn(law, n, taper);
        CHECK(c > 0.0);
        CHECK(c < 1.0);
        const double b_n = normalizer_bn(law, n);
        RngStream rng(7);
        const auto mc = oracle::monte_carlo_mean(10000000, [&]() { return taper(law.sample(rng) / b_n); });
        CHECK(std::abs(c - mc.mean) <= 3.0 * mc.sigma);
    }
    SUBCASE("|c_n| non-increasing over decades") {
        const TailLaw law(0.5, 1.0);
        double prev = kInf;
        for (std::size_t n : {10ul, 100ul, 1000ul, 10000ul}) {
            const double c = std::abs(centering_cn(law, n, taper));
            CHECK(c <= prev + 1e-15);
            prev = c;
        }
    }
}

TEST_CASE("rho integration") {
    const TruncationFn taper(TruncationShape::taper);

    SUBCASE("zero integrand") {
        const LevyMeasure rho(1.0, 0.5);
        CHECK(rho_integrate(rho, [](double) { return 0.0; }, -kInf, kInf) == 0.0);
    }
    SUBCASE("g_1 at alpha = 1 equals ln 2") {
        const LevyMeasure rho(1.0, 0.4);
        const double v = rho_integrate(
            rho, [](double x) { return std::min(std::max(std::abs(x) - 1.0, 0.0), 1.0); }, -kInf,
            kInf);
        CHECK(v == doctest::Approx(kLn2).epsilon(1e-9));
    }
    SUBCASE("h^2 (taper) at alpha = 1 equals 2 - 2 ln 2") {
        const LevyMeasure rho(1.0, 0.5);
        const double v = rho_integrate(
            rho, [&](double x) { const double u = taper(x); return u * u; }, -1.0, 1.0);
        CHECK(v == doctest::Approx(2.0 - 2.0 * kLn2).epsilon(1e-9));
    }
    SUBCASE("tail masses") {
        const LevyMeasure rho(0.8, 0.7);
        CHECK(rho.tail(2.0, TailSide::positive) == doctest::Approx(0.7 * std::pow(2.0, -0.8)));
        CHECK(rho.tail(0.25, TailSide::absolute) == doctest::Approx(std::pow(0.25, -0.8)));
        CHECK(rho_integrate(rho, [](double) { return 1.0; }, 2.0, kInf) ==
              doctest::Approx(0.7 * std::pow(2.0, -0.8)).epsilon(1e-9));
    }
    SUBCASE("independent Simpson oracle, asymmetric alpha = 0.8") {
        const LevyMeasure rho(0.8, 0.65);
        auto g = [&](double x) { const double u = taper(x); return u * u; };
        const double lib = rho_integrate(rho, g, -1.0, 1.0);
        // near-zero piece by direct Simpson (integrand ~ x^{0.2} is continuous)
        auto density_piece = [&](double w, double sgn) {
            return oracle::simpson_segments(
                [&](double x) {
                    return g(sgn * x) * 0.8 * w * std::pow(x, -1.8);
                },
                {1e-12, 0.5, 1.0}, 1e-12);
        };
        const double ref = density_piece(0.65, 1.0) + density_piece(0.35, -1.0);
        CHECK(lib == doctest::Approx(ref).epsilon(1e-6));
    }
    SUBCASE("non-integrable integrand detected") {
        const LevyMeasure rho(1.2, 0.5);
        CHECK_THROWS_AS(rho_integrate(rho, [](double) { return 1.0; }, -1.0, 1.0),
                        NumericalError);
    }
    SUBCASE("quadrature vs importance-sampling Monte Carlo for g_1") {
        // rho restricted to |x| >= 1 is exactly the sampling law.
        const TailLaw law(1.0, 0.4);
        const LevyMeasure rho(1.0, 0.4);
        auto g1 = [](double x) { return std::min(std::max(std::abs(x) - 1.0, 0.0), 1.0); };
        RngStream rng(11);
        const auto mc = oracle::monte_carlo_mean(10000000, [&]() { return g1(law.sample(rng)); });
        const double lib = rho_integrate(rho, g1, -kInf, kInf);
        CHECK(std::abs(lib - mc.mean) <= 3.0 * mc.sigma);
    }
}

TEST_CASE("scaling identity: pre-limit tail equals limit tail exactly") {
    for (double alpha : {0.5, 1.0, 1.5}) {
        const TailLaw law(alpha, 0.7);
        for (std::size_t n : {2ul, 100ul, 10000ul}) {
            const double b_n = normalizer_bn(law, n);
            for (double x : {0.5, 1.0, 2.0, 7.5}) {
                if (b_n * x < 1.0) continue;
                const double lhs = static_cast<double>(n) * law.tail_prob(b_n * x, TailSide::positive);
                const double rhs = 0.7 * std::pow(x, -alpha);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("levy drift rate and truncated centering against oracles") {
    const TruncationFn taper(TruncationShape::taper);
    const LevyMeasure rho(0.8, 0.7);

    SUBCASE("drift equals the direct rho integral of h") {
        for (double m : {1e-4, 0.01, 0.1, 0.4}) {
            const double closed = levy_drift_rate(rho, taper, m);
            const double quad = rho.integrate([&](double x) { return taper(x); }, -1.0, 1.0,
                                              {m, 0.5, 1.0}, 1e-11) -
                                rho.integrate([&](double x) { return taper(x); }, -m, m,
                                              {0.5 * m}, 1e-11);
            CHECK(closed == doctest::Approx(quad).epsilon(1e-7));
        }
    }
    SUBCASE("truncated centering: quadrature oracle and inert raw threshold") {
        const TailLaw law(1.2, 0.7);
        const std::size_t n = 4;
        const double b_n = normalizer_bn(law, n);
        const double eps = 0.4;
        const double closed = truncated_centering(law, n, taper, eps);
        const double quad = law.expectation(
            [&](double x) {
                const double u = x / b_n;
                return std::abs(u) >= eps ? taper(u) : 0.0;
            },
            {eps * b_n, 0.5 * b_n, b_n});
        CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
        CHECK(truncated_centering(law, n, taper, 0.24, false) ==
              doctest::Approx(centering_cn(law, n, taper)).epsilon(1e-13));
        CHECK_THROWS_AS(truncated_centering(law, n, taper, 0.6), std::invalid_argument);
    }
    SUBCASE("small-jump variance formula") {
        // direct integral of x^2 over |x| <= m
        const double m = 0.01;
        const LevyMeasure sym(0.8, 0.5);
        const double direct =
            sym.integrate([](double x) { return x * x; }, -m, m, {}, 1e-14);
        CHECK(small_jump_variance(0.8, m) == doctest::Approx(direct).epsilon(1e-7));
    }
}
