#include "noma_sic/modem.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "noma_sic/errors.hpp"

namespace noma_sic {

namespace {

std::uint32_t gray(std::uint32_t i) { return i ^ (i >> 1); }

int log2_int(int m) { return std::bit_width(static_cast<unsigned>(m)) - 1; }

}  // namespace

bool supported_order(int m) { return m == 2 || m == 4 || m == 16 || m == 64; }

double scaling_factor(int m, double eb) {
    if (!supported_order(m)) throw DomainError("unsupported modulation order " + std::to_string(m));
    if (!(eb > 0.0)) throw DomainError("Eb must be positive");
    if (m == 2) return std::sqrt(eb);
    return std::sqrt(3.0 * eb * log2_int(m) / (2.0 * (m - 1)));
}

std::string Constellation::label_string(int symbol) const {
    std::string s(bits, '0');
    const std::uint32_t lab = labels.at(symbol);
    for (int b = 0; b < bits; ++b)
        if (lab & (1u << (bits - 1 - b))) s[b] = '1';
    return s;
}

int Constellation::slice(double v) const {
    const double t = 0.5 * (v / d + (levels - 1));
    int i = static_cast<int>(std::ceil(t - 0.5));
    if (i < 0) i = 0;
    if (i > levels - 1) i = levels - 1;
    return i;
}

Constellation build_gray_constellation(int m, double eb) {
    Constellation c;
    c.order = m;
    c.eb = eb;
    c.d = scaling_factor(m, eb);
    c.bits = log2_int(m);
    if (m == 2) {
        c.levels = 2;
        c.bits_per_dim = 1;
        for (int i = 0; i < 2; ++i) {
            c.points.emplace_back(c.level(i), 0.0);
            c.labels.push_back(gray(i));
        }
        return c;
    }
    c.levels = 1 << (c.bits / 2);
    c.bits_per_dim = c.bits / 2;
    for (int iI = 0; iI < c.levels; ++iI) {
        for (int iQ = 0; iQ < c.levels; ++iQ) {
            c.points.emplace_back(c.level(iI), c.level(iQ));
            c.labels.push_back((gray(iI) << c.bits_per_dim) | gray(iQ));
        }
    }
    return c;
}

Detection mld_detect(cplx y, cplx h, double p, const Constellation& c) {
    if (h == cplx(0.0, 0.0)) throw DegenerateChannelError("mld_detect: zero channel");
    if (!(p > 0.0)) throw DomainError("mld_detect: power must be positive");
    const cplx g = std::sqrt(p) * h;
    int best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (int s = 0; s < static_cast<int>(c.points.size()); ++s) {
        const double metric = std::norm(y - g * c.points[s]);
        if (metric < best_metric) {
            best_metric = metric;
            best = s;
        }
    }
    return {best, c.labels[best]};
}

Detection mld_detect_sliced(cplx y, cplx h, double p, const Constellation& c) {
    if (h == cplx(0.0, 0.0)) throw DegenerateChannelError("mld_detect: zero channel");
    const cplx r = y / (std::sqrt(p) * h);
    const int iI = c.slice(r.real());
    if (c.is_bpsk()) return {iI, c.labels[iI]};
    const int s = iI * c.levels + c.slice(r.imag());
    return {s, c.labels[s]};
}

ErrorDistanceTable error_distance_table(int m, BerWeights weights) {
    if (!supported_order(m)) throw DomainError("unsupported modulation order " + std::to_string(m));
    switch (m) {
        case 2:
        case 4:
            return {1.0, {{1.0, 2}}};
        case 16:
            if (weights == BerWeights::gray_exact) return {0.25, {{3.0, 2}, {2.0, 6}, {-1.0, 10}}};
            return {0.5, {{2.0, 2}, {1.0, 6}, {-1.0, 10}}};
        default:
            if (weights == BerWeights::gray_exact)
                return {1.0 / 12.0, {{7.0, 2}, {6.0, 6}, {-1.0, 10}, {1.0, 18}, {-1.0, 26}}};
            return {1.0 / 6.0, {{4.0, 2}, {4.0, 6}, {1.0, 18}, {-1.0, 26}}};
    }
}

int popcount_diff(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

}  // namespace noma_sic
