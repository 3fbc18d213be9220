#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace noma_sic {

using cplx = std::complex<double>;

// Square Gray-coded QAM (M = 4, 16, 64) or BPSK (M = 2).
//
// Symbol index s = iI * L + iQ with level indices counted from the most
// negative amplitude; BPSK has L = 2 and no quadrature levels. A label holds
// the Gray code of iI (most significant bit first) followed by that of iQ.
struct Constellation {
    int order = 0;
    int levels = 0;          // per dimension
    int bits_per_dim = 0;    // in-phase bits (all bits for BPSK)
    int bits = 0;
    double d = 0.0;
    double eb = 1.0;
    std::vector<cplx> points;
    std::vector<std::uint32_t> labels;

    double level(int i) const { return d * (2.0 * i - (levels - 1)); }
    bool is_bpsk() const { return order == 2; }
    std::string label_string(int symbol) const;
    // Nearest level index along one dimension, ties toward the lower index.
    int slice(double v) const;
};

struct Detection {
    int symbol;
    std::uint32_t label;
};

// One signed Q-term: weight * Q((distance * d * rho + I) / sqrt(2 N0)).
struct DistanceTerm {
    double weight;
    int multiple;  // distance in units of d
};

struct ErrorDistanceTable {
    double prefactor = 1.0;
    std::vector<DistanceTerm> terms;
};

enum class BerWeights { paper, gray_exact };

bool supported_order(int m);
double scaling_factor(int m, double eb = 1.0);
Constellation build_gray_constellation(int m, double eb = 1.0);

// Exhaustive argmin |y - sqrt(p) h x|^2, lowest index on ties.
Detection mld_detect(cplx y, cplx h, double p, const Constellation& c);

// Same decision by per-dimension slicing of y / (sqrt(p) h).
Detection mld_detect_sliced(cplx y, cplx h, double p, const Constellation& c);

ErrorDistanceTable error_distance_table(int m, BerWeights weights = BerWeights::paper);

int popcount_diff(std::uint32_t a, std::uint32_t b);

}  // namespace noma_sic
