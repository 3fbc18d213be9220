#include <cmath>

#include "doctest.h"
#include "noma_sic/errors.hpp"
#include "noma_sic/simcore.hpp"

using namespace noma_sic;

namespace {

SimConfig base_config() {
    SimConfig cfg;
    cfg.channel = ChannelParams{{10.0, 2.5}};
    cfg.p1 = 0.8;
    cfg.p2 = 0.2;
    cfg.ebn0_db = {10.0};
    cfg.trials = 100000;
    cfg.seed = 17;
    return cfg;
}

}  // namespace

TEST_SUITE("simcore") {
    TEST_CASE("noiseless dynamic SIC makes no errors") {
        for (int m : {2, 4}) {
            auto cfg = base_config();
            cfg.m1 = cfg.m2 = m;
            cfg.ebn0_db = {200.0};
            cfg.trials = 20000;
            const auto p = run_curve(cfg).points.at(0);
            CHECK(p.ue[0].errors == 0);
            CHECK(p.ue[1].errors == 0);
            CHECK(p.ue[0].bits == 20000u * (m == 2 ? 1 : 2));
        }
    }

    TEST_CASE("ordering frequency and bucket partition") {
        const auto cfg = base_config();
        const auto p = run_curve(cfg).points.at(0);
        CHECK(p.trials == cfg.trials);
        CHECK(p.bucket_trials[0] + p.bucket_trials[1] == cfg.trials);
        CHECK(std::abs(static_cast<double>(p.bucket_trials[0]) / cfg.trials - 0.941176) < 0.004);
        for (int u = 0; u < 2; ++u) {
            CHECK(p.bucket[0][u].errors + p.bucket[1][u].errors == p.ue[u].errors);
            CHECK(p.bucket[0][u].bits + p.bucket[1][u].bits == p.ue[u].bits);
        }
        CHECK(p.second_stage[0].bits + p.second_stage[1].bits == cfg.trials);
    }

    TEST_CASE("a vanishing second UE reduces to single-user Rayleigh BPSK") {
        auto cfg = base_config();
        cfg.channel = ChannelParams{{1.0, 1e-6}};
        cfg.ebn0_db = {5.0, 10.0};
        cfg.trials = 400000;
        const auto curve = run_curve(cfg);
        for (const auto& p : curve.points) {
            const double g = cfg.p1 * std::pow(10.0, p.param / 10.0);
            const double exact = 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
            CHECK(std::abs(p.ue[0].ber - exact) < 4.0 * std::sqrt(exact / cfg.trials));
            // Every trial lands in the UE-1-first bucket.
            CHECK(p.bucket_trials[1] == 0);
            CHECK(p.bucket[1][0].empty());
        }
    }

    TEST_CASE("results do not depend on the thread count") {
        auto cfg = base_config();
        cfg.trials = 50000;
        cfg.block_size = 1000;
        cfg.threads = 1;
        const auto a = run_curve(cfg).points.at(0);
        cfg.threads = 3;
        const auto b = run_curve(cfg).points.at(0);
        CHECK(a.ue[0].errors == b.ue[0].errors);
        CHECK(a.ue[1].errors == b.ue[1].errors);
        CHECK(a.bucket_trials[1] == b.bucket_trials[1]);
        cfg.seed = 18;
        const auto c = run_curve(cfg).points.at(0);
        CHECK(c.ue[1].errors != a.ue[1].errors);
    }

    TEST_CASE("confidence half-width halves when trials quadruple") {
        auto cfg = base_config();
        cfg.ebn0_db = {0.0};
        cfg.trials = 50000;
        const auto small = run_curve(cfg).points.at(0);
        cfg.trials = 200000;
        const auto large = run_curve(cfg).points.at(0);
        CHECK(small.ue[1].ci95 / large.ue[1].ci95 == doctest::Approx(2.0).epsilon(0.1));
        const auto e = make_estimate(25, 100);
        CHECK(e.ci95 == doctest::Approx(1.96 * std::sqrt(0.25 * 0.75 / 100)));
        CHECK(make_estimate(0, 0).empty());
    }

    TEST_CASE("a wrong first decision raises the second UE's error rate") {
        auto cfg = base_config();
        cfg.ebn0_db = {5.0};
        cfg.trials = 200000;
        const auto p = run_curve(cfg).points.at(0);
        REQUIRE(p.second_stage[1].bits > 0);
        CHECK(p.second_stage[1].ber > 2.0 * p.second_stage[0].ber);
    }

    TEST_CASE("fixed order keeps the stronger average UE on top") {
        auto cfg = base_config();
        cfg.channel = ChannelParams{{1.0, 3.0}};
        cfg.mode = SicMode::fixed;
        const Simulator sim(cfg);
        Rng rng = make_substream(1, 0, 0);
        for (int i = 0; i < 1000; ++i) {
            const auto t = sim.run_trial(0, rng);
            CHECK(t.order[0] == 2);
        }
        Rng r1 = make_substream(2, 0, 0), r2 = make_substream(2, 0, 0);
        const auto a = sim.run_trial(0, r1);
        const auto b = run_trial(cfg, 0, r2);
        CHECK(a.errors == b.errors);
        CHECK(a.realized == b.realized);
    }

    TEST_CASE("constellation power accounting") {
        auto cfg = base_config();
        cfg.m1 = 16;
        cfg.m2 = 4;
        cfg.eb = 2.0;
        const Simulator sim(cfg);
        for (int ue = 1; ue <= 2; ++ue) {
            const auto& c = sim.constellation(ue);
            double e = 0.0;
            for (const auto& p : c.points) e += std::norm(p);
            CHECK(e / c.points.size() == doctest::Approx(cfg.eb * c.bits));
        }
    }

    TEST_CASE("configuration checks") {
        auto cfg = base_config();
        cfg.p1 = 0.2;
        cfg.p2 = 0.8;
        CHECK_THROWS_AS(cfg.validate(), DomainError);
        cfg = base_config();
        cfg.p2 = 0.3;
        CHECK_THROWS_AS(cfg.validate(), DomainError);
        cfg = base_config();
        cfg.ebn0_db = {10.0, 5.0};
        CHECK_THROWS_AS(cfg.validate(), DomainError);
        cfg = base_config();
        cfg.m1 = 8;
        CHECK_THROWS_AS(Simulator{cfg}, DomainError);
    }

    TEST_CASE("conditioned statistics") {
        const auto cfg = base_config();
        const auto gains = collect_statistics(cfg, StatisticKind::gain, 2, 2, 20000);
        REQUIRE(gains.size() == 20000);
        double m2 = 0.0;
        for (double g : gains) {
            CHECK(g >= 0.0);
            m2 += g * g;
        }
        // Weak position: Rayleigh with the effective variance.
        const double seff = 100.0 * 6.25 / 106.25;
        CHECK(m2 / gains.size() == doctest::Approx(seff).epsilon(0.03));
        const auto re = collect_statistics(cfg, StatisticKind::real_part, 2, 2, 20000);
        CHECK(re == collect_statistics(cfg, StatisticKind::real_part, 2, 2, 20000));
    }
}
