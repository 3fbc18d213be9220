#include "noma_sic/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noma_sic/errors.hpp"

namespace noma_sic {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

// q_chiani(z) = sum_j c_j e^{-kappa_j X^2} with X = sqrt(2 N0) z.
struct Kernel {
    double weight;
    double kappa;
    const char* tag;
};

std::array<Kernel, 2> chiani_kernels(double n0) {
    return {{{1.0 / 12.0, 1.0 / (4.0 * n0), "1"}, {0.25, 1.0 / (3.0 * n0), "2"}}};
}

void require(bool ok, const char* msg) {
    if (!ok) throw ConfigurationError(msg);
}

double mixture_weight(const GaussTerm& t) { return t.a * kSqrtPi * std::abs(t.c); }

// int_0^inf e^{-kappa x^2} (x - mu) e^{-(x - mu)^2 / W} dx
double first_order_integral(double kappa, double mu, double w_big) {
    const double a = kappa + 1.0 / w_big;
    const double b = mu / w_big;
    const double c = mu * mu / w_big;
    const double e_j0 = 0.5 * std::sqrt(kPi / a) * exp_erfc(b * b / a - c, -b / std::sqrt(a));
    return (std::exp(-c) + 2.0 * b * e_j0) / (2.0 * a) - mu * e_j0;
}

// Pieces of E[e^{-kappa X^2}; X > 0] for X = R + Y, R Rayleigh with E R^2 = v,
// Y ~ N(mu, tau^2).
struct HalfLine {
    double s1 = 0.0;    // bivariate-normal part
    double s2 = 0.0;    // boundary part
    double s3 = 0.0;    // Gaussian-product part
    double full = 0.0;  // same expectation without the indicator
    double value() const { return s1 + s2 + s3; }
};

HalfLine half_line_expectation(double kappa, double v, double mu, double tau) {
    const double q = 1.0 + 2.0 * kappa * tau * tau;
    const double kp = kappa / q;
    const double lambda = 1.0 / (tau * std::sqrt(q));
    const double delta = lambda * mu;
    const double a = 1.0 / v + kp;
    const double m = -kp * mu / a;
    const double s2 = 0.5 / a;
    const double s = std::sqrt(s2);
    const double e0 = -kp * mu * mu / (v * a);
    const double pref = (2.0 / v) / std::sqrt(q) * std::exp(e0) * std::sqrt(2.0 * kPi) * s;

    const double norm_at_zero = normal_pdf(m / s) / s;  // N(0; m, s^2)
    const double root = std::sqrt(1.0 + lambda * lambda * s2);
    const double b0 = bivariate_normal_cdf(m / s, (delta + lambda * m) / root, lambda * s / root);

    const double inv_l2 = 1.0 / (lambda * lambda);
    const double var_sum = s2 + inv_l2;
    const double m_star = (m * inv_l2 - mu * s2) / var_sum;
    const double s_star = std::sqrt(s2 * inv_l2 / var_sum);
    const double g = normal_pdf((m + mu) / std::sqrt(var_sum)) / std::sqrt(var_sum) * normal_cdf(m_star / s_star);

    HalfLine out;
    out.s1 = pref * m * b0;
    out.s2 = pref * s2 * norm_at_zero * normal_cdf(delta);
    out.s3 = pref * s2 * g;
    out.full = pref * (m * normal_cdf(m / s) + s2 * norm_at_zero);
    return out;
}

std::string idx(const std::string& base, std::size_t i, const std::string& j = {}) {
    return base + "_" + std::to_string(i + 1) + (j.empty() ? "" : "," + j);
}

double extended_chiani(double z) { return z >= 0.0 ? q_chiani(z) : 1.0 - q_chiani(-z); }

}  // namespace

void PepContext::validate() const {
    if (!(p1 > 0.0 && p2 > 0.0) || p1 < p2) throw DomainError("PepContext: need p_(1) >= p_(2) > 0");
    if (std::abs(p1 + p2 - 1.0) > 1e-9) throw DomainError("PepContext: power coefficients must sum to 1");
    if (!(n0 > 0.0)) throw DomainError("PepContext: N0 must be positive");
    if (!(sigma_n > 0.0 && sigma_m > 0.0)) throw DomainError("PepContext: scales must be positive");
    if (!(delta_n > 0.0)) throw DomainError("PepContext: |Delta_n| must be positive");
    if (kind != OtherKind::none) {
        if (other == 0.0 || !std::isfinite(other)) throw DomainError("PepContext: other-UE term must be nonzero");
        mixture.validate();
    }
}

double PepContext::alpha() const {
    return std::sqrt(kind == OtherKind::interferer ? p1 : p2) * delta_n;
}

double PepContext::beta() const {
    switch (kind) {
        case OtherKind::interferer: return 2.0 * std::sqrt(p2) * other;
        case OtherKind::residual: return 2.0 * std::sqrt(p1) * other;
        case OtherKind::none: break;
    }
    return 0.0;
}

void TermLedger::add(const std::string& name, double value) {
    if (!std::isfinite(value)) throw EvaluationError(name, value);
    entries_.emplace_back(name, value);
}

double TermLedger::get(const std::string& name) const {
    for (const auto& [k, v] : entries_)
        if (k == name) return v;
    throw DomainError("TermLedger: no term '" + name + "'");
}

bool TermLedger::contains(const std::string& name) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == name; });
}

// ---------------------------------------------------------------------------
// First decoding order. The strong-order gain density is a signed difference
// of two Rayleigh laws, each convolved with the Gaussian interference over the
// whole line; the result is then read on z >= 0.

namespace {

struct StrongComponent {
    double weight;
    double var;
    const char* tag;
};

std::array<StrongComponent, 2> strong_components(const PepContext& ctx) {
    const double sn2 = ctx.sigma_n * ctx.sigma_n;
    const double sm2 = ctx.sigma_m * ctx.sigma_m;
    if (std::abs(sn2 - sm2) < 1e-9 * sn2)
        throw ConfigurationError("first-order PEP: sigma_n and sigma_m coincide; use distinct scales");
    return {{{sn2 / (sn2 - sm2), sn2, "n"}, {-sm2 / (sn2 - sm2), sm2, "m"}}};
}

void check_first(const PepContext& ctx) {
    ctx.validate();
    require(ctx.kind == OtherKind::interferer, "first-order PEP needs an interferer context");
    require(ctx.mixture.size() == 1, "first-order density is defined for a single Gaussian term");
}

double pdf_x_first(double x, const PepContext& ctx) {
    const auto& t = ctx.mixture.terms.front();
    const double alpha = ctx.alpha();
    const double beta = ctx.beta();
    const double mu = beta * t.b;
    const double w2 = beta * beta * t.c * t.c;
    const double u = x - mu;
    double f = 0.0;
    for (const auto& comp : strong_components(ctx)) {
        const double v = alpha * alpha * comp.var;
        const double big_w = v + w2;
        f += comp.weight * 2.0 * std::sqrt(v) * u / std::pow(big_w, 1.5) * std::exp(-u * u / big_w);
    }
    return mixture_weight(t) * f;
}

// Half-line Rayleigh convolved with one Gaussian term.
double pdf_x_proper_term(double x, double v, double mu, double w, double amp_over_beta) {
    const double w2 = w * w;
    const double p = 1.0 / v + 1.0 / w2;
    const double u = x - mu;
    const double big_w = v + w2;
    const double first = std::exp(-u * u / w2) / (v * p);
    const double second = kSqrtPi * u / (v * w2 * std::pow(p, 1.5)) * exp_erfc(-u * u / big_w, -u / (w2 * std::sqrt(p)));
    return amp_over_beta * (first + second);
}

}  // namespace

double pdf_z_first(double z, const PepContext& ctx) {
    check_first(ctx);
    if (z < 0.0) throw DomainError("pdf_z_first: z must be >= 0");
    const double scale = std::sqrt(2.0 * ctx.n0);
    return scale * pdf_x_first(scale * z, ctx);
}

double pep_first(const PepContext& ctx, TermLedger* ledger) {
    check_first(ctx);
    TermLedger local;
    TermLedger& led = ledger ? *ledger : local;

    const auto& t = ctx.mixture.terms.front();
    const double alpha = ctx.alpha();
    const double beta = ctx.beta();
    const double mu = beta * t.b;
    const double w2 = beta * beta * t.c * t.c;
    const double k = mixture_weight(t);
    led.add("alpha", alpha);
    led.add("beta", beta);
    led.add("mu", mu);
    led.add("K", k);

    double total = 0.0;
    for (const auto& comp : strong_components(ctx)) {
        const std::string tag = comp.tag;
        const double v = alpha * alpha * comp.var;
        const double big_w = v + w2;
        const double amp = comp.weight * k * 2.0 * std::sqrt(v) / std::pow(big_w, 1.5);
        led.add("v(" + tag + ")", v);
        led.add("W(" + tag + ")", big_w);
        led.add("amp(" + tag + ")", amp);
        for (const auto& ker : chiani_kernels(ctx.n0)) {
            const double i = first_order_integral(ker.kappa, mu, big_w);
            led.add(std::string("I") + ker.tag + "(" + tag + ")", i);
            const double g = amp * ker.weight * i;
            led.add(std::string("G") + ker.tag + "(" + tag + ")", g);
            total += g;
        }
    }
    led.add("P", total);
    return total;
}

double pep_first_quadrature(const PepContext& ctx, const Quadrature& quad) {
    check_first(ctx);
    return integrate_semi_infinite([&](double z) { return q_chiani(z) * pdf_z_first(z, ctx); }, quad);
}

// ---------------------------------------------------------------------------
// Second decoding order.

namespace {

void check_proper(const PepContext& ctx) {
    ctx.validate();
    require(ctx.kind != OtherKind::none, "this density needs an interferer or residual term");
    require(ctx.mixture.size() <= 3, "mixtures hold at most 3 terms");
}

double pdf_x_proper(double x, const PepContext& ctx) {
    const double alpha = ctx.alpha();
    const double beta = ctx.beta();
    const double v = alpha * alpha * ctx.sigma_n * ctx.sigma_n;
    double f = 0.0;
    for (const auto& t : ctx.mixture.terms)
        f += pdf_x_proper_term(x, v, beta * t.b, std::abs(beta * t.c), t.a / std::abs(beta));
    return f;
}

}  // namespace

double pdf_z_proper(double z, const PepContext& ctx) {
    check_proper(ctx);
    const double scale = std::sqrt(2.0 * ctx.n0);
    return scale * pdf_x_proper(scale * z, ctx);
}

double pdf_z_second(double z, const PepContext& ctx, bool previous_correct) {
    if (!previous_correct) return pdf_z_proper(z, ctx);
    if (z < 0.0) throw DomainError("pdf_z_second: z must be >= 0 when the predecessor is correct");
    if (!(ctx.n0 > 0.0 && ctx.p2 > 0.0 && ctx.delta_n > 0.0 && ctx.sigma_n > 0.0))
        throw DomainError("pdf_z_second: need positive N0, p_(2), |Delta_n| and sigma_n");
    const double s = ctx.p2 * ctx.delta_n * ctx.delta_n * ctx.sigma_n * ctx.sigma_n;
    return 4.0 * ctx.n0 * z / s * std::exp(-2.0 * ctx.n0 * z * z / s);
}

namespace {

struct ProperTerms {
    std::vector<HalfLine> by_kernel[2];
    std::vector<HalfLine> at_zero;  // kappa = 0: P(X > 0)
};

ProperTerms proper_terms(const PepContext& ctx, bool need_zero) {
    const double alpha = ctx.alpha();
    const double beta = ctx.beta();
    const double v = alpha * alpha * ctx.sigma_n * ctx.sigma_n;
    const auto kernels = chiani_kernels(ctx.n0);
    ProperTerms out;
    for (const auto& t : ctx.mixture.terms) {
        const double mu = beta * t.b;
        const double tau = std::abs(beta * t.c) / std::numbers::sqrt2;
        for (int j = 0; j < 2; ++j) out.by_kernel[j].push_back(half_line_expectation(kernels[j].kappa, v, mu, tau));
        if (need_zero) out.at_zero.push_back(half_line_expectation(0.0, v, mu, tau));
    }
    return out;
}

}  // namespace

double pep_second_incorrect(const PepContext& ctx, TermLedger* ledger) {
    check_proper(ctx);
    TermLedger local;
    TermLedger& led = ledger ? *ledger : local;
    led.add("alpha", ctx.alpha());
    led.add("beta", ctx.beta());

    const auto kernels = chiani_kernels(ctx.n0);
    const auto terms = proper_terms(ctx, false);
    double total = 0.0;
    for (std::size_t i = 0; i < ctx.mixture.terms.size(); ++i) {
        const double k = mixture_weight(ctx.mixture.terms[i]);
        led.add(idx("K", i), k);
        double s[3] = {0.0, 0.0, 0.0};
        for (int j = 0; j < 2; ++j) {
            const auto& h = terms.by_kernel[j][i];
            led.add(idx("H", i, kernels[j].tag), h.value());
            s[0] += k * kernels[j].weight * h.s1;
            s[1] += k * kernels[j].weight * h.s2;
            s[2] += k * kernels[j].weight * h.s3;
        }
        for (int r = 0; r < 3; ++r) led.add(idx("S", i, std::to_string(r + 1)), s[r]);
        total += s[0] + s[1] + s[2];
    }
    led.add("P", total);
    return total;
}

double pep_second_incorrect_quadrature(const PepContext& ctx, const Quadrature& quad) {
    check_proper(ctx);
    return integrate_semi_infinite([&](double z) { return q_chiani(z) * pdf_z_proper(z, ctx); }, quad);
}

double pep_second_correct(double delta_n, double sigma_n, double p2, double n0) {
    if (!(delta_n > 0.0 && sigma_n > 0.0 && p2 > 0.0 && n0 > 0.0))
        throw DomainError("pep_second_correct: arguments must be positive");
    const double gamma = p2 * delta_n * delta_n * sigma_n * sigma_n / n0;
    return 1.0 / (12.0 + 3.0 * gamma) + 3.0 / (12.0 + 4.0 * gamma);
}

double pep_second_correct_quadrature(double delta_n, double sigma_n, double p2, double n0, const Quadrature& quad) {
    PepContext ctx;
    ctx.p2 = p2;
    ctx.n0 = n0;
    ctx.delta_n = delta_n;
    ctx.sigma_n = sigma_n;
    return integrate_semi_infinite([&](double z) { return q_chiani(z) * pdf_z_second(z, ctx, true); }, quad);
}

double pep_full_range(const PepContext& ctx, TermLedger* ledger) {
    check_proper(ctx);
    TermLedger local;
    TermLedger& led = ledger ? *ledger : local;
    const auto kernels = chiani_kernels(ctx.n0);
    const auto terms = proper_terms(ctx, true);
    double total = 0.0;
    for (std::size_t i = 0; i < ctx.mixture.terms.size(); ++i) {
        const double k = mixture_weight(ctx.mixture.terms[i]);
        const double positive = terms.at_zero[i].value();
        led.add(idx("P(X>0)", i), positive);
        double part = 1.0 - positive;
        for (int j = 0; j < 2; ++j) {
            const auto& h = terms.by_kernel[j][i];
            led.add(idx("H", i, kernels[j].tag), h.value());
            led.add(idx("F", i, kernels[j].tag), h.full);
            part += kernels[j].weight * (2.0 * h.value() - h.full);
        }
        total += k * part;
    }
    led.add("P", total);
    return total;
}

double pep_full_range_quadrature(const PepContext& ctx, const Quadrature& quad) {
    check_proper(ctx);
    return integrate_real_line([&](double z) { return extended_chiani(z) * pdf_z_proper(z, ctx); }, quad);
}

// ---------------------------------------------------------------------------
// Composition and BER assembly.

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1]");
}

}  // namespace

double compose_second(const ConditionalPeps& n, double other_first) {
    check_probability(n.second_correct, "P(A_n | not A_m, B_n,(2))");
    check_probability(n.second_incorrect, "P(A_n | A_m, B_n,(2))");
    check_probability(other_first, "P(A_m | B_m,(1))");
    return n.second_correct * (1.0 - other_first) + n.second_incorrect * other_first;
}

double compose_ue_error(const ConditionalPeps& n, double other_first, double p_first) {
    check_probability(n.first, "P(A_n | B_n,(1))");
    check_probability(p_first, "P(B_n,(1))");
    const double p = n.first * p_first + compose_second(n, other_first) * (1.0 - p_first);
    if (!(p >= 0.0 && p <= 1.0)) throw NumericError("composed error probability left [0,1]: " + std::to_string(p));
    return p;
}

std::vector<SymbolCombination> enumerate_combinations(int position, int other_order, double d_other) {
    if (!supported_order(other_order)) throw DomainError("enumerate_combinations: unsupported modulation order");
    if (position != 1 && position != 2) throw DomainError("enumerate_combinations: position must be 1 or 2");
    if (!(d_other > 0.0)) throw DomainError("enumerate_combinations: d must be positive");
    // BPSK behaves as two in-phase levels.
    const int levels = other_order == 2 ? 2 : static_cast<int>(std::lround(std::sqrt(other_order)));
    std::vector<SymbolCombination> out;
    if (position == 1) {
        for (int k = 0; k < levels / 2; ++k) out.push_back({{}, {(2 * k + 1) * d_other}});
    } else {
        for (int k = 1; k < levels; ++k) out.push_back({{2.0 * k * d_other}, {}});
    }
    return out;
}

double conditional_bit_error(double delta_b, double rho, double interference, double n0, QKind q) {
    if (!(n0 > 0.0)) throw DomainError("conditional_bit_error: N0 must be positive");
    const double arg = (2.0 * delta_b * rho + interference) / std::sqrt(2.0 * n0);
    return q == QKind::exact ? q_exact(arg) : extended_chiani(arg);
}

void Scenario::validate() const {
    channel.validate(2);
    if (!(p1 > 0.0 && p2 > 0.0) || p1 < p2) throw DomainError("scenario: need p_(1) >= p_(2) > 0");
    if (std::abs(p1 + p2 - 1.0) > 1e-9) throw DomainError("scenario: power coefficients must sum to 1");
    if (!supported_order(m1) || !supported_order(m2)) throw DomainError("scenario: unsupported modulation order");
    if (!(eb > 0.0)) throw DomainError("scenario: Eb must be positive");
}

GaussianMixture exact_real_part_mixture(int ue, int order, const ChannelParams& params) {
    params.validate(2);
    if (ue != 1 && ue != 2) throw DomainError("exact_real_part_mixture: UE must be 1 or 2");
    if (order != 1 && order != 2) throw DomainError("exact_real_part_mixture: order must be 1 or 2");
    const double su = params.var(ue);
    const double so = params.var(3 - ue);
    const double seff = su * so / (su + so);
    GaussianMixture mix;
    if (order == 2) {
        mix.terms.push_back({1.0 / std::sqrt(kPi * seff), 0.0, std::sqrt(seff)});
        return mix;
    }
    // Unconditioned law minus the weak-position share, renormalized.
    const double a = (su + so) / su;
    const double b = so / su;
    mix.terms.push_back({a / std::sqrt(kPi * su), 0.0, std::sqrt(su)});
    mix.terms.push_back({-b / std::sqrt(kPi * seff), 0.0, std::sqrt(seff)});
    return mix;
}

MixtureSet exact_mixtures(const ChannelParams& params) {
    MixtureSet set;
    for (int ue = 1; ue <= 2; ++ue)
        for (int order = 1; order <= 2; ++order) set.re[ue - 1][order - 1] = exact_real_part_mixture(ue, order, params);
    return set;
}

double ebn0_to_n0(double ebn0_db, double eb) { return eb / std::pow(10.0, ebn0_db / 10.0); }

namespace {

// Sum of the table's Q-terms, each averaged over the other-UE patterns.
template <class Pep>
double table_average(const ErrorDistanceTable& table, double d, const std::vector<SymbolCombination>& combos, Pep pep) {
    double sum = 0.0;
    for (const auto& term : table.terms) {
        double avg = 0.0;
        for (const auto& c : combos) {
            const double other = c.interferers.empty() ? c.residuals.front() : c.interferers.front();
            avg += pep(term.multiple * d, other);
        }
        sum += term.weight * avg / static_cast<double>(combos.size());
    }
    return table.prefactor * sum;
}

}  // namespace

TheoryPoint theory_point(const Scenario& sc, double ebn0_db, const TheoryOptions& opts) {
    sc.validate();
    const double n0 = ebn0_to_n0(ebn0_db, sc.eb);
    const MixtureSet mixtures = opts.mixtures ? *opts.mixtures : exact_mixtures(sc.channel);

    TheoryPoint out;
    for (int n = 1; n <= 2; ++n) {
        const int m = 3 - n;
        const auto table = error_distance_table(sc.order_of(n), opts.weights);
        const double d_n = scaling_factor(sc.order_of(n), sc.eb);
        const double d_m = scaling_factor(sc.order_of(m), sc.eb);
        auto& ue = out.ue[n - 1];

        PepContext ctx;
        ctx.p1 = sc.p1;
        ctx.p2 = sc.p2;
        ctx.n0 = n0;

        const auto strong = ordered_gain_scales(n, 1, sc.channel, opts.model);
        ctx.sigma_n = strong[0];
        ctx.sigma_m = strong[1];
        ctx.kind = OtherKind::interferer;
        ctx.mixture = mixtures.at(m, 2);
        ue.peps.first = table_average(table, d_n, enumerate_combinations(1, sc.order_of(m), d_m),
                                      [&](double delta, double x) {
                                          ctx.delta_n = delta;
                                          ctx.other = x;
                                          return pep_first(ctx);
                                      });

        const double weak = ordered_gain_scales(n, 2, sc.channel, opts.model)[0];
        ctx.sigma_n = weak;
        ctx.sigma_m = weak;
        ctx.kind = OtherKind::residual;
        ctx.mixture = mixtures.at(m, 1);
        ue.peps.second_incorrect = table_average(table, d_n, enumerate_combinations(2, sc.order_of(m), d_m),
                                                 [&](double delta, double r) {
                                                     ctx.delta_n = delta;
                                                     ctx.other = r;
                                                     return pep_second_incorrect(ctx);
                                                 });
        ue.peps.second_correct = table_average(table, d_n, {SymbolCombination{}}, [&](double delta, double) {
            return pep_second_correct(delta, weak, sc.p2, n0);
        });
        ue.p_first = order_probability(sc.channel.sigma[n - 1], sc.channel.sigma[m - 1]);
    }
    for (int n = 1; n <= 2; ++n) {
        auto& ue = out.ue[n - 1];
        const double other_first = out.ue[2 - n].peps.first;
        ue.second = compose_second(ue.peps, other_first);
        ue.total = compose_ue_error(ue.peps, other_first, ue.p_first);
    }
    out.bucket[0] = {out.ue[0].peps.first, out.ue[1].second};
    out.bucket[1] = {out.ue[0].second, out.ue[1].peps.first};
    return out;
}

double theory_ber(int ue, const Scenario& sc, double ebn0_db, const TheoryOptions& opts) {
    if (ue != 1 && ue != 2) throw DomainError("theory_ber: UE must be 1 or 2");
    return theory_point(sc, ebn0_db, opts).ue[ue - 1].total;
}

std::array<double, 2> theory_fixed(const Scenario& sc, double ebn0_db, BerWeights weights) {
    sc.validate();
    const double n0 = ebn0_to_n0(ebn0_db, sc.eb);
    const int top = sc.channel.sigma[0] >= sc.channel.sigma[1] ? 1 : 2;
    const int bottom = 3 - top;
    const double s_top = sc.channel.sigma[top - 1];
    const double s_bottom = sc.channel.sigma[bottom - 1];
    auto real_part = [](double sigma) {
        GaussianMixture mix;
        mix.terms.push_back({1.0 / (kSqrtPi * sigma), 0.0, sigma});
        return mix;
    };

    PepContext ctx;
    ctx.p1 = sc.p1;
    ctx.p2 = sc.p2;
    ctx.n0 = n0;

    ctx.sigma_n = ctx.sigma_m = s_top;
    ctx.kind = OtherKind::interferer;
    ctx.mixture = real_part(s_bottom);
    const double d_top = scaling_factor(sc.order_of(top), sc.eb);
    const double d_bottom = scaling_factor(sc.order_of(bottom), sc.eb);
    const double first = table_average(error_distance_table(sc.order_of(top), weights), d_top,
                                       enumerate_combinations(1, sc.order_of(bottom), d_bottom),
                                       [&](double delta, double x) {
                                           ctx.delta_n = delta;
                                           ctx.other = x;
                                           return pep_full_range(ctx);
                                       });

    const auto table_b = error_distance_table(sc.order_of(bottom), weights);
    ctx.sigma_n = ctx.sigma_m = s_bottom;
    ctx.kind = OtherKind::residual;
    ctx.mixture = real_part(s_top);
    ConditionalPeps peps;
    peps.first = first;
    peps.second_incorrect = table_average(table_b, d_bottom, enumerate_combinations(2, sc.order_of(top), d_top),
                                          [&](double delta, double r) {
                                              ctx.delta_n = delta;
                                              ctx.other = r;
                                              return pep_full_range(ctx);
                                          });
    peps.second_correct = table_average(table_b, d_bottom, {SymbolCombination{}}, [&](double delta, double) {
        return pep_second_correct(delta, s_bottom, sc.p2, n0);
    });

    std::array<double, 2> out{};
    out[top - 1] = first;
    out[bottom - 1] = compose_second(peps, first);
    return out;
}

}  // namespace noma_sic
