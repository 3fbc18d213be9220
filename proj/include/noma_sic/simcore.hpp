#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "noma_sic/channel.hpp"
#include "noma_sic/modem.hpp"
#include "noma_sic/rng.hpp"

namespace noma_sic {

enum class SicMode { dynamic, fixed };

struct SimConfig {
    ChannelParams channel{{1.0, 1.0}};
    double p1 = 0.8;  // power of the UE decoded first
    double p2 = 0.2;
    int m1 = 2;
    int m2 = 2;
    double eb = 1.0;
    std::vector<double> ebn0_db{10.0};
    std::uint64_t trials = 10000;
    SicMode mode = SicMode::dynamic;
    std::uint64_t seed = 1;
    unsigned threads = 1;  // 0: hardware concurrency
    std::uint64_t block_size = 8192;

    void validate() const;
    int order_of(int ue) const { return ue == 1 ? m1 : m2; }
};

struct TrialOutcome {
    std::array<int, 2> errors{};  // bit errors per UE
    std::array<int, 2> bits{};
    std::array<int, 2> order{};    // UE indices in decoding order
    std::array<int, 2> realized{};  // UE indices sorted by instantaneous |h|
    bool first_correct = true;
};

// Precomputed constellations and noise scale for one configuration.
class Simulator {
public:
    explicit Simulator(SimConfig cfg);

    const SimConfig& config() const { return cfg_; }
    const Constellation& constellation(int ue) const { return constellations_.at(ue - 1); }
    TrialOutcome run_trial(std::size_t point, Rng& rng) const;

private:
    SimConfig cfg_;
    std::array<Constellation, 2> constellations_;
    std::vector<double> n0_;
    std::array<int, 2> fixed_order_{};
};

TrialOutcome run_trial(const SimConfig& cfg, std::size_t point, Rng& rng);

struct BerEstimate {
    double ber = 0.0;
    double ci95 = 0.0;  // normal-approximation half-width
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    bool empty() const { return bits == 0; }
};

BerEstimate make_estimate(std::uint64_t errors, std::uint64_t bits);

struct CurvePoint {
    double param = 0.0;
    std::uint64_t trials = 0;
    std::array<BerEstimate, 2> ue;
    // [bucket][ue]; bucket 0 holds trials with |h_1| >= |h_2|, bucket 1 the rest.
    std::array<std::array<BerEstimate, 2>, 2> bucket;
    std::array<std::uint64_t, 2> bucket_trials{};
    // Second-decoded UE split by the first stage outcome: [0] correct, [1] wrong.
    std::array<BerEstimate, 2> second_stage;
};

struct BerCurve {
    std::vector<CurvePoint> points;
};

CurvePoint run_point(const Simulator& sim, std::size_t point);
BerCurve run_curve(const SimConfig& cfg);

enum class StatisticKind { gain, real_part };

// Conditioned channel samples for UE `ue` at decoding position `order`.
std::vector<double> collect_statistics(const SimConfig& cfg, StatisticKind which, int ue, int order,
                                       std::size_t count);

}  // namespace noma_sic
