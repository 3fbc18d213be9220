#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "noma_sic/analytic.hpp"
#include "noma_sic/errors.hpp"

using namespace noma_sic;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

const ChannelParams kFig3{{std::sqrt(db(20.0)), std::sqrt(db(7.96))}};

Scenario fig3_scenario(int m1 = 2, int m2 = 2) {
    Scenario sc;
    sc.channel = kFig3;
    const double p1 = db(-2.22), p2 = db(-3.98);
    sc.p1 = p1 / (p1 + p2);
    sc.p2 = p2 / (p1 + p2);
    sc.m1 = m1;
    sc.m2 = m2;
    return sc;
}

// Interferer context for UE 1 decoded first (BPSK, |Delta| = 2, x = 1).
PepContext first_context(double ratio_db, double ebn0_db) {
    const double r = db(ratio_db);
    PepContext ctx;
    ctx.p1 = r / (1 + r);
    ctx.p2 = 1 / (1 + r);
    ctx.n0 = ebn0_to_n0(ebn0_db);
    const auto s = ordered_gain_scales(1, 1, kFig3, ChannelModel::exact);
    ctx.sigma_n = s[0];
    ctx.sigma_m = s[1];
    ctx.delta_n = 2.0;
    ctx.kind = OtherKind::interferer;
    ctx.other = 1.0;
    ctx.mixture = exact_real_part_mixture(2, 2, kFig3);
    return ctx;
}

// Residual context for UE 2 decoded second after a wrong first decision.
PepContext residual_context(double ratio_db, double ebn0_db) {
    const double r = db(ratio_db);
    PepContext ctx;
    ctx.p1 = r / (1 + r);
    ctx.p2 = 1 / (1 + r);
    ctx.n0 = ebn0_to_n0(ebn0_db);
    ctx.sigma_n = ctx.sigma_m = ordered_gain_scales(2, 2, kFig3, ChannelModel::exact)[0];
    ctx.delta_n = 2.0;
    ctx.kind = OtherKind::residual;
    ctx.other = 2.0;
    ctx.mixture = exact_real_part_mixture(1, 1, kFig3);
    return ctx;
}

const double kRatios[] = {1.76, 3.0, 6.0, 10.0, 15.0};
const double kSnrs[] = {0.0, 7.5, 15.0, 22.5, 30.0};

}  // namespace

TEST_SUITE("analytic") {
    TEST_CASE("first-order closed form matches quadrature on the grid") {
        for (double r : kRatios)
            for (double e : kSnrs) {
                const auto ctx = first_context(r, e);
                CHECK(pep_first(ctx) == doctest::Approx(pep_first_quadrature(ctx)).epsilon(1e-6));
            }
    }

    TEST_CASE("second-order incorrect closed form matches quadrature on the grid") {
        for (double r : kRatios)
            for (double e : kSnrs) {
                const auto ctx = residual_context(r, e);
                CHECK(pep_second_incorrect(ctx) == doctest::Approx(pep_second_incorrect_quadrature(ctx)).epsilon(1e-6));
                CHECK(pep_full_range(ctx) == doctest::Approx(pep_full_range_quadrature(ctx)).epsilon(1e-6));
            }
    }

    TEST_CASE("second-order correct closed form") {
        // gamma = p2 Delta^2 sigma^2 / N0.
        CHECK(pep_second_correct(1.0, 1e-9, 1.0, 1.0) == doctest::Approx(1.0 / 3.0));
        CHECK(pep_second_correct(2.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / 24 + 3.0 / 28).epsilon(1e-12));
        CHECK(pep_second_correct(2.0, 1.0, 1.0, 1.0) == doctest::Approx(0.148810).epsilon(1e-5));
        for (double gamma : {0.1, 1.0, 4.0, 10.0, 100.0}) {
            const double p2 = 0.25, n0 = 0.5, sigma = 1.5;
            const double delta = std::sqrt(gamma * n0 / p2) / sigma;
            CHECK(pep_second_correct(delta, sigma, p2, n0) ==
                  doctest::Approx(pep_second_correct_quadrature(delta, sigma, p2, n0)).epsilon(1e-9));
        }
        CHECK_THROWS_AS(pep_second_correct(0.0, 1.0, 1.0, 1.0), DomainError);
    }

    TEST_CASE("a vanishing residual recovers the correct-predecessor PEP") {
        auto ctx = residual_context(3.0, 15.0);
        const double target = pep_second_correct(ctx.delta_n, ctx.sigma_n, ctx.p2, ctx.n0);
        double prev_gap = INFINITY;
        for (double scale : {1e-1, 1e-3, 1e-6}) {
            ctx.other = 2.0 * scale;
            const double gap = std::abs(pep_second_incorrect(ctx) - target);
            CHECK(gap <= prev_gap);
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-6 * target);
    }

    TEST_CASE("densities integrate to one") {
        const auto ctx = residual_context(3.0, 10.0);
        CHECK(integrate_real_line([&](double z) { return pdf_z_proper(z, ctx); }) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(integrate_semi_infinite([&](double z) { return pdf_z_second(z, ctx, true); }) ==
              doctest::Approx(1.0).epsilon(1e-8));
        const auto inter = first_context(3.0, 10.0);
        // The first-order form is a signed whole-line law read on z >= 0; its half-line mass stays below one.
        const double half = integrate_semi_infinite([&](double z) { return pdf_z_first(z, inter); });
        CHECK(half > 0.5);
        CHECK(half <= 1.0 + 1e-9);
    }

    TEST_CASE("mode of the correct-predecessor density") {
        PepContext ctx;
        ctx.p2 = 0.3;
        ctx.n0 = 0.2;
        ctx.delta_n = 2.0;
        ctx.sigma_n = 1.7;
        const double s = ctx.p2 * 4.0 * ctx.sigma_n * ctx.sigma_n;
        const double mode = std::sqrt(s / (4.0 * ctx.n0));
        CHECK(pdf_z_second(mode, ctx, true) > pdf_z_second(mode * 1.001, ctx, true));
        CHECK(pdf_z_second(mode, ctx, true) > pdf_z_second(mode * 0.999, ctx, true));
        CHECK_THROWS_AS(pdf_z_second(-0.1, ctx, true), DomainError);
    }

    TEST_CASE("whole-line density against a Monte Carlo histogram") {
        const auto ctx = residual_context(3.0, 10.0);
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        // Signed two-term law of the residual's channel part, drawn by rejection from the wider term.
        const auto mix = ctx.mixture;
        const double c_wide = mix.terms[0].c;
        std::normal_distribution<double> wide(0.0, c_wide / std::numbers::sqrt2);
        const double bound = mix.terms[0].a;
        const double scale = std::sqrt(2.0 * ctx.n0);
        std::vector<double> zs;
        zs.reserve(400000);
        while (zs.size() < 400000) {
            const double re = wide(rng);
            if (u(rng) * bound * std::exp(-re * re / (c_wide * c_wide)) > eval_mixture(mix, re)) continue;
            const double gain = ctx.sigma_n * std::sqrt(-std::log(1.0 - u(rng)));
            zs.push_back((ctx.alpha() * gain + ctx.beta() * re) / scale);
        }
        const auto pdf = histogram_pdf(zs, 80);
        double worst = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < pdf.density.size(); ++i) {
            const double mid = 0.5 * (pdf.edges[i] + pdf.edges[i + 1]);
            peak = std::max(peak, pdf.density[i]);
            worst = std::max(worst, std::abs(pdf.density[i] - pdf_z_proper(mid, ctx)));
        }
        CHECK(worst < 0.03 * peak);
    }

    TEST_CASE("composition") {
        const ConditionalPeps n{0.1, 0.2, 0.5};
        CHECK(compose_second(n, 0.3) == doctest::Approx(0.2 * 0.7 + 0.5 * 0.3));
        CHECK(compose_ue_error(n, 0.3, 0.9) == doctest::Approx(0.119));
        // Hand re-expansion: first pf + sc (1 - pf) + (si - sc) of (1 - pf).
        for (double of : {0.0, 0.05, 0.5, 1.0})
            for (double pf : {0.0, 0.3, 1.0})
                CHECK(compose_ue_error(n, of, pf) ==
                      doctest::Approx(n.first * pf + n.second_correct * (1 - pf) +
                                      (n.second_incorrect - n.second_correct) * of * (1 - pf)));
        CHECK_THROWS_AS(compose_ue_error({1.2, 0.0, 0.0}, 0.0, 0.5), DomainError);
        CHECK_THROWS_AS(compose_second(n, -0.1), DomainError);
    }

    TEST_CASE("symbol combinations") {
        CHECK(enumerate_combinations(1, 2, 1.0).size() == 1);
        CHECK(enumerate_combinations(1, 4, 1.0).size() == 1);
        const auto c16 = enumerate_combinations(1, 16, 0.5);
        REQUIRE(c16.size() == 2);
        CHECK(c16[1].interferers[0] == doctest::Approx(1.5));
        CHECK(enumerate_combinations(1, 64, 1.0).size() == 4);
        const auto r16 = enumerate_combinations(2, 16, 0.5);
        REQUIRE(r16.size() == 3);
        CHECK(r16[2].residuals[0] == doctest::Approx(3.0));
        CHECK(enumerate_combinations(2, 2, 1.0).size() == 1);
        CHECK_THROWS_AS(enumerate_combinations(3, 4, 1.0), DomainError);
    }

    TEST_CASE("conditional bit error") {
        CHECK(conditional_bit_error(1.0, 1.0, 0.0, 0.5) == doctest::Approx(q_exact(2.0)));
        CHECK(conditional_bit_error(1.0, 1.0, -3.0, 0.5, QKind::chiani) == doctest::Approx(1.0 - q_chiani(1.0)));
        CHECK(conditional_bit_error(0.5, 2.0, 1.0, 2.0, QKind::chiani) == doctest::Approx(q_chiani(1.5)));
        CHECK_THROWS_AS(conditional_bit_error(1.0, 1.0, 0.0, 0.0), DomainError);
    }

    TEST_CASE("exact real-part laws") {
        for (int ue = 1; ue <= 2; ++ue) {
            const double su = kFig3.var(ue);
            const double pf = order_probability(kFig3.sigma[ue - 1], kFig3.sigma[2 - ue]);
            const auto first = exact_real_part_mixture(ue, 1, kFig3);
            const auto second = exact_real_part_mixture(ue, 2, kFig3);
            CHECK(first.mass() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(second.mass() == doctest::Approx(1.0).epsilon(1e-12));
            for (double x : {0.0, 0.5, 2.0, 7.0}) {
                const double marginal = std::exp(-x * x / su) / std::sqrt(std::numbers::pi * su);
                CHECK(pf * eval_mixture(first, x) + (1 - pf) * eval_mixture(second, x) ==
                      doctest::Approx(marginal).epsilon(1e-12));
            }
        }
        // The weak-position law matches the published fit near its peak.
        CHECK(eval_mixture(exact_real_part_mixture(2, 2, ChannelParams{{10.0, 2.5}}), 0.0) ==
              doctest::Approx(0.2326).epsilon(0.01));
    }

    TEST_CASE("theory curves") {
        const auto sc = fig3_scenario();
        double prev[2] = {1.0, 1.0};
        for (double e = 0.0; e <= 40.0; e += 5.0) {
            const auto tp = theory_point(sc, e);
            for (int u = 0; u < 2; ++u) {
                CHECK(tp.ue[u].total > 0.0);
                CHECK(tp.ue[u].total < prev[u]);
                prev[u] = tp.ue[u].total;
                CHECK(tp.ue[u].total == doctest::Approx(tp.ue[u].p_first * tp.ue[u].peps.first +
                                                        (1 - tp.ue[u].p_first) * tp.ue[u].second));
            }
            CHECK(tp.bucket[0][0] == tp.ue[0].peps.first);
            CHECK(tp.bucket[1][1] == tp.ue[1].peps.first);
        }
        CHECK(theory_ber(2, sc, 10.0) == theory_point(sc, 10.0).ue[1].total);
        CHECK_THROWS_AS(theory_ber(3, sc, 10.0), DomainError);
    }

    TEST_CASE("near-zero SNR approaches the table's Chiani limit for the second position") {
        // With a correct predecessor the decision statistic is Rayleigh and every Q term tends to 1/3.
        const auto sc = fig3_scenario(16, 16);
        const auto tp = theory_point(sc, -80.0);
        CHECK(tp.ue[0].peps.second_correct == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    }

    TEST_CASE("fixed order floors while dynamic order keeps falling") {
        Scenario sc = fig3_scenario();
        sc.channel = ChannelParams{{std::sqrt(db(10.0)), 1.0}};
        const auto f40 = theory_fixed(sc, 40.0), f60 = theory_fixed(sc, 60.0);
        CHECK(f60[0] > 0.5 * f40[0]);
        const double d40 = theory_ber(1, sc, 40.0), d60 = theory_ber(1, sc, 60.0);
        CHECK(d60 < 0.2 * d40);
        // Fixed order puts the stronger average UE on top; it decodes first with full interference.
        CHECK(f40[0] > d40);
    }

    TEST_CASE("configuration and evaluation errors") {
        auto ctx = first_context(3.0, 10.0);
        ctx.sigma_m = ctx.sigma_n;
        CHECK_THROWS_AS(pep_first(ctx), ConfigurationError);
        ctx = first_context(3.0, 10.0);
        ctx.mixture = exact_real_part_mixture(2, 1, kFig3);
        CHECK_THROWS_AS(pep_first(ctx), ConfigurationError);
        CHECK_THROWS_AS(pep_first(residual_context(3.0, 10.0)), ConfigurationError);
        ctx = first_context(3.0, 10.0);
        std::swap(ctx.p1, ctx.p2);
        CHECK_THROWS_AS(pep_first(ctx), DomainError);

        TermLedger led;
        CHECK_THROWS_AS(led.add("bad", std::nan("")), EvaluationError);
        pep_first(first_context(3.0, 10.0), &led);
        CHECK(led.contains("G1(n)"));
        CHECK(led.get("P") == doctest::Approx(led.get("G1(n)") + led.get("G2(n)") + led.get("G1(m)") + led.get("G2(m)")));
        CHECK_THROWS_AS(led.get("missing"), DomainError);
    }
}
