#include "noma_sic/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "noma_sic/errors.hpp"

namespace noma_sic {

void ChannelParams::validate(std::size_t need) const {
    if (sigma.size() < need) throw DomainError("channel params: need " + std::to_string(need) + " UE scales");
    for (double s : sigma)
        if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("channel params: scales must be positive");
}

ChannelRealization sample_channels(const ChannelParams& params, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ChannelRealization r;
    r.h.reserve(params.sigma.size());
    for (double s : params.sigma) {
        const double scale = s / std::sqrt(2.0);
        const double re = gauss(rng);
        const double im = gauss(rng);
        r.h.emplace_back(scale * re, scale * im);
    }
    r.order.resize(params.sigma.size());
    for (std::size_t i = 0; i < r.order.size(); ++i) r.order[i] = static_cast<int>(i) + 1;
    std::stable_sort(r.order.begin(), r.order.end(),
                     [&r](int a, int b) { return std::abs(r.h[a - 1]) > std::abs(r.h[b - 1]); });
    return r;
}

double pdf_ordered_gain_strong(double x, double sigma_n, double sigma_m) {
    if (!(x >= 0.0)) throw DomainError("pdf_ordered_gain_strong: x must be >= 0");
    const double sn2 = sigma_n * sigma_n;
    const double sm2 = sigma_m * sigma_m;
    const double x2 = x * x;
    if (std::abs(sn2 - sm2) < 1e-9 * sn2) return 2.0 * x * x2 / (sn2 * sn2) * std::exp(-x2 / sn2);
    // expm1 keeps precision when the scales are close.
    const double diff = std::exp(-x2 / sn2) * -std::expm1(-x2 * (1.0 / sm2 - 1.0 / sn2));
    return 2.0 * x / (sn2 - sm2) * diff;
}

double pdf_ordered_gain_weak(double x, double sigma_n) {
    if (!(x >= 0.0)) throw DomainError("pdf_ordered_gain_weak: x must be >= 0");
    const double sn2 = sigma_n * sigma_n;
    return 2.0 * x / sn2 * std::exp(-x * x / sn2);
}

double order_probability(double sigma_n, double sigma_m) {
    if (!(sigma_n > 0.0 && sigma_m > 0.0)) throw DomainError("order_probability: scales must be positive");
    const double sn2 = sigma_n * sigma_n;
    return sn2 / (sn2 + sigma_m * sigma_m);
}

double effective_sigma(double sigma_n, double sigma_m) {
    const double sn2 = sigma_n * sigma_n;
    const double sm2 = sigma_m * sigma_m;
    return std::sqrt(sn2 * sm2 / (sn2 + sm2));
}

std::array<double, 2> ordered_gain_scales(int ue, int order, const ChannelParams& params, ChannelModel model) {
    params.validate(2);
    if (ue != 1 && ue != 2) throw DomainError("ordered_gain_scales: UE must be 1 or 2");
    if (order != 1 && order != 2) throw DomainError("ordered_gain_scales: order must be 1 or 2");
    const double sn = params.sigma[ue - 1];
    const double sm = params.sigma[2 - ue];
    const double seff = effective_sigma(sn, sm);
    if (model == ChannelModel::exact) {
        if (order == 1) return {sn, seff};
        return {seff, seff};
    }
    if (order == 2) return {sn, sn};
    // UE 2 on top while sigma_1 >= sigma_2: nudge the other scale off sigma_1.
    if (ue == 2 && params.sigma[0] >= params.sigma[1]) return {sn, sm + 0.5 * kPerturbationEps};
    return {sn, sm};
}

double ordered_gain_pdf(double x, int ue, int order, const ChannelParams& params, ChannelModel model) {
    const auto s = ordered_gain_scales(ue, order, params, model);
    if (order == 1) return pdf_ordered_gain_strong(x, s[0], s[1]);
    return pdf_ordered_gain_weak(x, s[0]);
}

double rayleigh_cdf(double x, double sigma) {
    if (x <= 0.0) return 0.0;
    return -std::expm1(-x * x / (sigma * sigma));
}

double order_statistic_cdf(double x, int r, const std::vector<std::function<double(double)>>& marginal_cdfs) {
    const int n = static_cast<int>(marginal_cdfs.size());
    if (n > 12) throw SizeError("order_statistic_cdf: at most 12 variables");
    if (r < 1 || r > n) throw DomainError("order_statistic_cdf: rank out of range");
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = marginal_cdfs[i](x);
    if (r == 1) {
        double p = 1.0;
        for (double v : f) p *= 1.0 - v;
        return 1.0 - p;
    }
    if (r == n) {
        double p = 1.0;
        for (double v : f) p *= v;
        return p;
    }
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) < r) continue;
        double term = 1.0;
        for (int j = 0; j < n; ++j) term *= (mask & (1u << j)) ? f[j] : 1.0 - f[j];
        total += term;
    }
    return total;
}

namespace {

template <class Keep>
std::vector<double> rejection_sample(int ue, int order, const ChannelParams& params, Rng& rng, std::size_t count,
                                     Keep keep) {
    params.validate(2);
    if (ue != 1 && ue != 2) throw DomainError("conditioned sampling: UE must be 1 or 2");
    if (order != 1 && order != 2) throw DomainError("conditioned sampling: order must be 1 or 2");
    if (count == 0) throw DomainError("conditioned sampling: count must be >= 1");

    auto accepted = [&](const ChannelRealization& c) { return (c.order[0] == ue) == (order == 1); };

    constexpr std::size_t pilot = 100000;
    std::vector<double> out;
    out.reserve(count);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pilot; ++i) {
        const auto c = sample_channels(params, rng);
        if (accepted(c)) {
            ++hits;
            if (out.size() < count) out.push_back(keep(c.h[ue - 1]));
        }
    }
    const double acceptance = static_cast<double>(hits) / pilot;
    if (acceptance < 1e-4)
        throw FeasibilityError("conditioned sampling: acceptance " + std::to_string(acceptance) + " below 1e-4",
                               acceptance);
    while (out.size() < count) {
        const auto c = sample_channels(params, rng);
        if (accepted(c)) out.push_back(keep(c.h[ue - 1]));
    }
    return out;
}

}  // namespace

std::vector<double> sample_conditioned_real_part(int ue, int order, const ChannelParams& params, Rng& rng,
                                                 std::size_t count) {
    return rejection_sample(ue, order, params, rng, count, [](std::complex<double> h) { return h.real(); });
}

std::vector<double> sample_conditioned_gain(int ue, int order, const ChannelParams& params, Rng& rng,
                                            std::size_t count) {
    return rejection_sample(ue, order, params, rng, count, [](std::complex<double> h) { return std::abs(h); });
}

}  // namespace noma_sic
