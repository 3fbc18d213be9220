#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "noma_sic/errors.hpp"
#include "noma_sic/numerics.hpp"

using namespace noma_sic;

TEST_SUITE("numerics") {
    TEST_CASE("Q-function values") {
        CHECK(q_exact(0.0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(q_exact(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
        CHECK(q_exact(-1.0) == doctest::Approx(1.0 - 0.15865525393145707).epsilon(1e-12));
        CHECK(q_chiani(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK_THROWS_AS(q_chiani(-0.1), DomainError);
        CHECK_THROWS_AS(q_exact(std::nan("")), DomainError);
    }

    TEST_CASE("reference values") {
        CHECK(q_exact(1.2816) == doctest::Approx(0.1).epsilon(1e-3));
        CHECK(q_exact(INFINITY) == 0.0);
        CHECK(q_exact(-INFINITY) == 1.0);
        CHECK(q_chiani(1.0) == doctest::Approx(0.178899).epsilon(1e-6));
        CHECK(q_chiani(INFINITY) == 0.0);
    }

    TEST_CASE("Chiani approximation envelope on [0, 6]") {
        // The gap peaks at the origin (1/2 vs 1/3) and stays near 0.02 around x = 1.
        double worst = 0.0, worst_tail = 0.0;
        for (int i = 0; i <= 600; ++i) {
            const double x = 0.01 * i;
            const double gap = std::abs(q_chiani(x) - q_exact(x));
            worst = std::max(worst, gap);
            if (x >= 0.5) worst_tail = std::max(worst_tail, gap);
        }
        CHECK(worst == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
        CHECK(worst_tail < 0.024);
        CHECK(std::abs(q_chiani(6.0) - q_exact(6.0)) < 1e-8);
    }

    TEST_CASE("q_chiani against a Rayleigh density") {
        // 2 s^2 = 1: 1/(12 + 12 s^2) + 3/(12 + 16 s^2) = 1/18 + 3/20.
        const double s2 = 0.5;
        auto rayleigh = [&](double z) { return z / s2 * std::exp(-z * z / (2 * s2)); };
        CHECK(integrate_semi_infinite(rayleigh) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(integrate_semi_infinite([&](double z) { return q_chiani(z) * rayleigh(z); }) ==
              doctest::Approx(1.0 / 18 + 3.0 / 20).epsilon(1e-8));
    }

    TEST_CASE("exp_erfc agrees with the direct product and survives underflow") {
        for (double b : {-3.0, -0.5, 0.0, 1.0, 5.0, 20.0}) {
            const double a = -0.3 * b * b;
            CHECK(exp_erfc(a, b) == doctest::Approx(std::exp(a) * std::erfc(b)).epsilon(1e-12));
        }
        // erfc(40) underflows, e^{1599} overflows; the product is ~ e^{-1}/(40 sqrt(pi)).
        const double v = exp_erfc(1599.0, 40.0);
        CHECK(v == doctest::Approx(std::exp(-1.0) / (40.0 * std::sqrt(std::numbers::pi)) * (1 - 1.0 / 3200)).epsilon(1e-6));
    }

    TEST_CASE("bivariate normal CDF against quadrature") {
        struct Case {
            double h, k, rho;
        };
        for (const auto& c : {Case{0.0, 0.0, 0.5}, Case{0.3, -1.2, 0.8}, Case{-0.7, 0.4, -0.6}, Case{1.5, 2.0, 0.999},
                              Case{-2.0, -1.0, 0.2}, Case{0.0, 1.0, -0.3}}) {
            // P(X <= h, Y <= k) = int_{-inf}^{h} phi(x) Phi((k - rho x)/sqrt(1-rho^2)) dx
            const double s = std::sqrt(1.0 - c.rho * c.rho);
            const double ref = integrate_semi_infinite(
                [&](double t) { return normal_pdf(c.h - t) * normal_cdf((c.k - c.rho * (c.h - t)) / s); });
            CHECK(bivariate_normal_cdf(c.h, c.k, c.rho) == doctest::Approx(ref).epsilon(1e-9));
        }
        CHECK(bivariate_normal_cdf(0.0, 0.0, 0.0) == doctest::Approx(0.25));
        CHECK_THROWS_AS(bivariate_normal_cdf(0.0, 0.0, 1.0), DomainError);
    }

    TEST_CASE("semi-infinite quadrature oracles") {
        CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(integrate_semi_infinite([](double x) { return std::exp(-x * x); }) ==
              doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-10));
        CHECK(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }) ==
              doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
        CHECK(integrate_real_line([](double x) { return normal_pdf(x - 0.7); }) == doctest::Approx(1.0).epsilon(1e-10));
    }

    TEST_CASE("quadrature budget exhaustion reports the best estimate") {
        Quadrature tight;
        tight.max_subdivisions = 3;
        tight.rel_tol = 1e-14;
        tight.abs_tol = 0.0;
        try {
            integrate_semi_infinite([](double x) { return std::sin(50 * x) * std::exp(-x); }, tight);
            FAIL("expected ConvergenceError");
        } catch (const ConvergenceError& e) {
            CHECK(std::isfinite(e.best_estimate()));
            CHECK(e.error_estimate() > 0.0);
        }
        Quadrature bad;
        bad.rel_tol = 0.0;
        CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, bad), DomainError);
    }

    TEST_CASE("histogram density of standard normal samples") {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> g;
        std::vector<double> xs(1000000);
        for (auto& x : xs) x = g(rng);
        const auto pdf = histogram_pdf(xs, 100);
        CHECK(pdf.density.size() == 100);
        CHECK(pdf.mass() == doctest::Approx(1.0).epsilon(1e-12));
        double peak = 0.0;
        for (double d : pdf.density) peak = std::max(peak, d);
        CHECK(std::abs(peak - normal_pdf(0.0)) < 0.02);
        CHECK(rice_bins(1000000) == 200);
        CHECK(histogram_pdf(xs).density.size() == 200);
    }

    TEST_CASE("flat density from uniform samples") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> xs(200000);
        for (auto& x : xs) x = u(rng);
        for (double d : histogram_pdf(xs, 20).density) CHECK(d == doctest::Approx(1.0).epsilon(0.05));
    }

    TEST_CASE("histogram error shrinks like N^{-1/2} at fixed binning") {
        // Exponential density on a fixed 20-bin layout; the sup-norm error is
        // dominated by sampling noise, which halves when N quadruples.
        auto sup_error = [](std::size_t n, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            std::exponential_distribution<double> e(1.0);
            std::vector<double> xs(n);
            double worst = 0.0;
            // Average over repetitions to tame the extreme-value noise of a single draw.
            for (int rep = 0; rep < 8; ++rep) {
                for (auto& x : xs) x = std::min(e(rng), 4.0);
                xs[0] = 0.0;
                xs[1] = 4.0;
                const auto pdf = histogram_pdf(xs, 20);
                double w = 0.0;
                for (std::size_t i = 0; i + 1 < pdf.density.size(); ++i) {
                    const double a = pdf.edges[i], b = pdf.edges[i + 1];
                    const double exact = (std::exp(-a) - std::exp(-b)) / (b - a);
                    w = std::max(w, std::abs(pdf.density[i] - exact));
                }
                worst += w / 8;
            }
            return worst;
        };
        const double e1 = sup_error(10000, 1), e2 = sup_error(40000, 2), e3 = sup_error(160000, 3);
        CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.5));
        CHECK(e2 / e3 == doctest::Approx(2.0).epsilon(0.5));
    }

    TEST_CASE("histogram of a constant sample") {
        const auto pdf = histogram_pdf({2.0, 2.0, 2.0});
        CHECK(pdf.density.size() == 1);
        CHECK(pdf.mass() == doctest::Approx(1.0));
        CHECK_THROWS_AS(histogram_pdf({}), DomainError);
    }
}
