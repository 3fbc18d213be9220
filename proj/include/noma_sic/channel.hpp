#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "noma_sic/rng.hpp"

namespace noma_sic {

// Rayleigh scales: E|h_i|^2 = sigma_i^2.
struct ChannelParams {
    std::vector<double> sigma;

    void validate(std::size_t need = 1) const;
    double var(int ue) const { return sigma.at(ue - 1) * sigma.at(ue - 1); }
};

struct ChannelRealization {
    std::vector<std::complex<double>> h;
    std::vector<int> order;  // UE indices (1-based), strongest first
};

// Which closed-form parametrization feeds the ordered-gain densities.
//   exact:   conditional scales, giving the true conditional laws
//   printed: the raw per-UE scales, as the formulas are usually quoted
enum class ChannelModel { exact, printed };

constexpr double kPerturbationEps = 1e-5;

ChannelRealization sample_channels(const ChannelParams& params, Rng& rng);

// (2x/(sn^2 - sm^2)) [e^{-x^2/sn^2} - e^{-x^2/sm^2}], with the equal-scale limit.
double pdf_ordered_gain_strong(double x, double sigma_n, double sigma_m);

// (2x/sn^2) e^{-x^2/sn^2}
double pdf_ordered_gain_weak(double x, double sigma_n);

// P(|h_n| >= |h_m|)
double order_probability(double sigma_n, double sigma_m);

// Scale of the joint minimum: sn^2 sm^2 / (sn^2 + sm^2), returned as a std-like scale.
double effective_sigma(double sigma_n, double sigma_m);

// Scale arguments to feed the ordered-gain densities for UE `ue` at decoding
// position `order` (1 = decoded first). For order 1 both entries are used
// (strong form), for order 2 only the first (weak form).
std::array<double, 2> ordered_gain_scales(int ue, int order, const ChannelParams& params, ChannelModel model);

// Density of |h_ue| at decoding position `order` under the given model.
double ordered_gain_pdf(double x, int ue, int order, const ChannelParams& params, ChannelModel model);

// CDF of the r-th smallest of N independent variables (r = 1: minimum).
double order_statistic_cdf(double x, int r, const std::vector<std::function<double(double)>>& marginal_cdfs);

double rayleigh_cdf(double x, double sigma);

// Re{h_ue} conditioned on UE `ue` being decoded at position `order`, by rejection.
std::vector<double> sample_conditioned_real_part(int ue, int order, const ChannelParams& params, Rng& rng,
                                                 std::size_t count);

// |h_ue| conditioned on the decoding position, by rejection.
std::vector<double> sample_conditioned_gain(int ue, int order, const ChannelParams& params, Rng& rng,
                                            std::size_t count);

}  // namespace noma_sic
