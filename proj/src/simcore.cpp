#include "noma_sic/simcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "noma_sic/errors.hpp"

namespace noma_sic {

void SimConfig::validate() const {
    channel.validate(2);
    if (!(p1 > 0.0 && p2 > 0.0) || p1 < p2) throw DomainError("sim config: need p_(1) >= p_(2) > 0");
    if (std::abs(p1 + p2 - 1.0) > 1e-9) throw DomainError("sim config: power coefficients must sum to 1");
    if (!supported_order(m1) || !supported_order(m2)) throw DomainError("sim config: unsupported modulation order");
    if (ebn0_db.empty()) throw DomainError("sim config: empty Eb/N0 grid");
    for (std::size_t i = 1; i < ebn0_db.size(); ++i)
        if (!(ebn0_db[i] > ebn0_db[i - 1])) throw DomainError("sim config: Eb/N0 grid must be strictly increasing");
    if (trials < 1) throw DomainError("sim config: trials must be >= 1");
    if (block_size < 1) throw DomainError("sim config: block size must be >= 1");
}

Simulator::Simulator(SimConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    constellations_ = {build_gray_constellation(cfg_.m1, cfg_.eb), build_gray_constellation(cfg_.m2, cfg_.eb)};
    for (double db : cfg_.ebn0_db) n0_.push_back(cfg_.eb / std::pow(10.0, db / 10.0));
    // Frozen order: descending average gain, UE 1 on ties.
    fixed_order_ = cfg_.channel.sigma[0] >= cfg_.channel.sigma[1] ? std::array<int, 2>{1, 2} : std::array<int, 2>{2, 1};
}

TrialOutcome Simulator::run_trial(std::size_t point, Rng& rng) const {
    const double n0 = n0_.at(point);
    std::normal_distribution<double> gauss(0.0, 1.0);

    TrialOutcome out;
    // Same draws and tie rule as sample_channels, without the heap traffic.
    std::array<cplx, 2> h;
    for (int u = 0; u < 2; ++u) {
        const double scale = cfg_.channel.sigma[u] / std::numbers::sqrt2;
        const double re = gauss(rng);
        const double im = gauss(rng);
        h[u] = cplx(scale * re, scale * im);
    }
    out.realized = std::norm(h[1]) > std::norm(h[0]) ? std::array<int, 2>{2, 1} : std::array<int, 2>{1, 2};
    out.order = cfg_.mode == SicMode::dynamic ? out.realized : fixed_order_;

    std::array<int, 2> sym{};
    for (int u = 0; u < 2; ++u) {
        const auto& c = constellations_[u];
        sym[u] = static_cast<int>(rng() % c.points.size());
    }
    const std::array<double, 2> power = {cfg_.p1, cfg_.p2};  // by decoding position

    cplx y(0.0, 0.0);
    for (int k = 0; k < 2; ++k) {
        const int u = out.order[k] - 1;
        y += std::sqrt(power[k]) * h[u] * constellations_[u].points[sym[u]];
    }
    const double ns = std::sqrt(0.5 * n0);
    y += cplx(ns * gauss(rng), ns * gauss(rng));

    for (int k = 0; k < 2; ++k) {
        const int u = out.order[k] - 1;
        const auto& c = constellations_[u];
        const Detection det = mld_detect_sliced(y, h[u], power[k], c);
        out.errors[u] = popcount_diff(det.label, c.labels[sym[u]]);
        out.bits[u] = c.bits;
        if (k == 0) {
            out.first_correct = det.symbol == sym[u];
            y -= std::sqrt(power[0]) * h[u] * c.points[det.symbol];
        }
    }
    return out;
}

TrialOutcome run_trial(const SimConfig& cfg, std::size_t point, Rng& rng) { return Simulator(cfg).run_trial(point, rng); }

BerEstimate make_estimate(std::uint64_t errors, std::uint64_t bits) {
    BerEstimate e;
    e.errors = errors;
    e.bits = bits;
    if (bits == 0) return e;
    const double n = static_cast<double>(bits);
    e.ber = static_cast<double>(errors) / n;
    e.ci95 = 1.96 * std::sqrt(e.ber * (1.0 - e.ber) / n);
    return e;
}

namespace {

struct Tally {
    std::uint64_t trials = 0;
    std::array<std::uint64_t, 2> errors{}, bits{};
    std::array<std::array<std::uint64_t, 2>, 2> bucket_errors{}, bucket_bits{};
    std::array<std::uint64_t, 2> bucket_trials{};
    std::array<std::uint64_t, 2> second_errors{}, second_bits{};

    void add(const TrialOutcome& t) {
        ++trials;
        const int b = t.realized[0] == 1 ? 0 : 1;
        ++bucket_trials[b];
        for (int u = 0; u < 2; ++u) {
            errors[u] += t.errors[u];
            bits[u] += t.bits[u];
            bucket_errors[b][u] += t.errors[u];
            bucket_bits[b][u] += t.bits[u];
        }
        const int second = t.order[1] - 1;
        const int split = t.first_correct ? 0 : 1;
        second_errors[split] += t.errors[second];
        second_bits[split] += t.bits[second];
    }

    void merge(const Tally& o) {
        trials += o.trials;
        for (int i = 0; i < 2; ++i) {
            errors[i] += o.errors[i];
            bits[i] += o.bits[i];
            bucket_trials[i] += o.bucket_trials[i];
            second_errors[i] += o.second_errors[i];
            second_bits[i] += o.second_bits[i];
            for (int j = 0; j < 2; ++j) {
                bucket_errors[i][j] += o.bucket_errors[i][j];
                bucket_bits[i][j] += o.bucket_bits[i][j];
            }
        }
    }
};

unsigned worker_count(unsigned requested, std::size_t blocks) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(blocks, 1)));
}

}  // namespace

CurvePoint run_point(const Simulator& sim, std::size_t point) {
    const auto& cfg = sim.config();
    const std::uint64_t blocks = (cfg.trials + cfg.block_size - 1) / cfg.block_size;
    std::vector<Tally> per_block(blocks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            Rng rng = make_substream(cfg.seed, point, b);
            const std::uint64_t begin = b * cfg.block_size;
            const std::uint64_t end = std::min(cfg.trials, begin + cfg.block_size);
            Tally t;
            for (std::uint64_t i = begin; i < end; ++i) t.add(sim.run_trial(point, rng));
            per_block[b] = t;
        }
    };

    const unsigned n = worker_count(cfg.threads, blocks);
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    }

    Tally total;
    for (const auto& t : per_block) total.merge(t);

    CurvePoint p;
    p.param = cfg.ebn0_db.at(point);
    p.trials = total.trials;
    for (int u = 0; u < 2; ++u) {
        p.ue[u] = make_estimate(total.errors[u], total.bits[u]);
        p.bucket_trials[u] = total.bucket_trials[u];
        p.second_stage[u] = make_estimate(total.second_errors[u], total.second_bits[u]);
        for (int b = 0; b < 2; ++b) p.bucket[b][u] = make_estimate(total.bucket_errors[b][u], total.bucket_bits[b][u]);
    }
    return p;
}

BerCurve run_curve(const SimConfig& cfg) {
    const Simulator sim(cfg);
    BerCurve curve;
    for (std::size_t i = 0; i < cfg.ebn0_db.size(); ++i) curve.points.push_back(run_point(sim, i));
    return curve;
}

std::vector<double> collect_statistics(const SimConfig& cfg, StatisticKind which, int ue, int order,
                                       std::size_t count) {
    Rng rng = make_substream(cfg.seed, 0xffffffffffffffffull, 0);
    if (which == StatisticKind::gain) return sample_conditioned_gain(ue, order, cfg.channel, rng, count);
    return sample_conditioned_real_part(ue, order, cfg.channel, rng, count);
}

}  // namespace noma_sic
