#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noma_sic/channel.hpp"
#include "noma_sic/gaussfit.hpp"
#include "noma_sic/modem.hpp"
#include "noma_sic/numerics.hpp"

namespace noma_sic {

// What the other UE contributes to the decision statistic of UE n.
//   interferer: n decoded first, x_m still superimposed (power p_(2))
//   residual:   n decoded second after a wrong decision Re{Delta_m} (power p_(1))
//   none:       n decoded second after a correct decision
enum class OtherKind { interferer, residual, none };

struct PepContext {
    double p1 = 0.0;       // p_(1)
    double p2 = 0.0;       // p_(2)
    double n0 = 1.0;
    double sigma_n = 1.0;  // desired-UE scale fed to the ordered-gain density
    double sigma_m = 1.0;  // second scale of the strong-order density (first order only)
    double delta_n = 0.0;  // |Delta_n|
    OtherKind kind = OtherKind::none;
    double other = 0.0;    // x_m or Re{Delta_m}
    GaussianMixture mixture;  // density of the other UE's real channel part

    void validate() const;
    // Decision-statistic scale of the desired term, sqrt(p) |Delta_n|.
    double alpha() const;
    // Scale of the other UE's real channel part, 2 sqrt(p) x_m or 2 sqrt(p) Re{Delta_m}.
    double beta() const;
};

// Named intermediate values of a closed-form evaluation.
class TermLedger {
public:
    void add(const std::string& name, double value);
    double get(const std::string& name) const;
    bool contains(const std::string& name) const;
    const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }
    void clear() { entries_.clear(); }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

// Decision-statistic densities, z = (|xi| + 2 Re{zeta}) / sqrt(2 N0).
double pdf_z_first(double z, const PepContext& ctx);
double pdf_z_second(double z, const PepContext& ctx, bool previous_correct);
// Proper density of z with an unconditioned Rayleigh desired term, valid on the whole line.
double pdf_z_proper(double z, const PepContext& ctx);

double pep_first(const PepContext& ctx, TermLedger* ledger = nullptr);
double pep_second_incorrect(const PepContext& ctx, TermLedger* ledger = nullptr);
double pep_second_correct(double delta_n, double sigma_n, double p2, double n0);
// E[Q(z)] over the whole line, with Q(z) = 1 - q_chiani(-z) for z < 0.
double pep_full_range(const PepContext& ctx, TermLedger* ledger = nullptr);

// Quadrature references for the closed forms above.
double pep_first_quadrature(const PepContext& ctx, const Quadrature& quad = {});
double pep_second_incorrect_quadrature(const PepContext& ctx, const Quadrature& quad = {});
double pep_second_correct_quadrature(double delta_n, double sigma_n, double p2, double n0,
                                     const Quadrature& quad = {});
double pep_full_range_quadrature(const PepContext& ctx, const Quadrature& quad = {});

struct ConditionalPeps {
    double first = 0.0;             // P(A_n | B_n,(1))
    double second_correct = 0.0;    // P(A_n | not A_m, B_n,(2))
    double second_incorrect = 0.0;  // P(A_n | A_m, B_n,(2))
};

// P(A_n) = P(A|B1) P(B1) + [P(A|~A_m,B2)(1 - P(A_m|B1)) + P(A|A_m,B2) P(A_m|B1)] P(B2)
double compose_ue_error(const ConditionalPeps& n, double other_first, double p_first);
// The bracket alone: P(A_n | B_n,(2)).
double compose_second(const ConditionalPeps& n, double other_first);

struct SymbolCombination {
    std::vector<double> residuals;    // Re{Delta} of decoded predecessors
    std::vector<double> interferers;  // in-phase amplitudes of undecoded successors
};

// Patterns for a UE decoded at `position` (1 or 2) against another UE of order `other_order`.
std::vector<SymbolCombination> enumerate_combinations(int position, int other_order, double d_other);

enum class QKind { exact, chiani };

// Q((2 Delta_b rho + I) / sqrt(2 N0)) with Q chosen by `q` (Chiani mirrored for negative arguments).
double conditional_bit_error(double delta_b, double rho, double interference, double n0, QKind q = QKind::exact);

struct Scenario {
    ChannelParams channel{{1.0, 1.0}};
    double p1 = 0.8;  // p_(1), linear
    double p2 = 0.2;  // p_(2), linear
    int m1 = 2;
    int m2 = 2;
    double eb = 1.0;

    void validate() const;
    int order_of(int ue) const { return ue == 1 ? m1 : m2; }
};

// Densities of Re{h_ue} at each decoding position, indexed [ue-1][order-1].
struct MixtureSet {
    std::array<std::array<GaussianMixture, 2>, 2> re;
    const GaussianMixture& at(int ue, int order) const { return re.at(ue - 1).at(order - 1); }
};

// The exact laws: a single Gaussian for the weaker position, a signed two-term
// mixture for the stronger one.
GaussianMixture exact_real_part_mixture(int ue, int order, const ChannelParams& params);
MixtureSet exact_mixtures(const ChannelParams& params);

struct TheoryOptions {
    ChannelModel model = ChannelModel::exact;
    BerWeights weights = BerWeights::paper;
    std::optional<MixtureSet> mixtures;  // fitted densities; exact laws when empty
};

struct UeTheory {
    ConditionalPeps peps;
    double second = 0.0;   // P(A_n | B_n,(2)) after error propagation
    double p_first = 0.0;  // P(B_n,(1))
    double total = 0.0;
};

struct TheoryPoint {
    std::array<UeTheory, 2> ue;
    // [bucket][ue]: bucket 0 has UE 1 decoded first, bucket 1 has UE 2 first.
    std::array<std::array<double, 2>, 2> bucket{};
};

double ebn0_to_n0(double ebn0_db, double eb = 1.0);

TheoryPoint theory_point(const Scenario& sc, double ebn0_db, const TheoryOptions& opts = {});
double theory_ber(int ue, const Scenario& sc, double ebn0_db, const TheoryOptions& opts = {});

// Order frozen to descending average gain, no mixing over order probabilities.
std::array<double, 2> theory_fixed(const Scenario& sc, double ebn0_db, BerWeights weights = BerWeights::paper);

}  // namespace noma_sic
