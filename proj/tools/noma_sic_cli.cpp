// noma-sic: experiment runner and inspection tool for two-user uplink NOMA with SIC.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "noma_sic/analytic.hpp"
#include "noma_sic/errors.hpp"
#include "noma_sic/experiment.hpp"
#include "noma_sic/gaussfit.hpp"

using namespace noma_sic;

namespace {

struct Common {
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;  // 0: keep the config / preset value
    std::string out = "out";
    unsigned threads = 1;
};

struct ScenarioFlags {
    double p1_db = -2.22, p2_db = -3.98;
    double s1_db = 20.0, s2_db = 7.96;
    std::string mod1 = "bpsk", mod2 = "bpsk";
    std::string grid = "0:5:30";
    std::string mode = "dynamic";
    std::string model = "exact";
    std::string weights = "paper";

    void attach(CLI::App* app) {
        app->add_option("--p1-db", p1_db, "power of the first-decoded UE (dB)");
        app->add_option("--p2-db", p2_db, "power of the second-decoded UE (dB)");
        app->add_option("--sigma1-sq-db", s1_db, "average channel gain of UE 1 (dB)");
        app->add_option("--sigma2-sq-db", s2_db, "average channel gain of UE 2 (dB)");
        app->add_option("--mod1", mod1, "modulation of UE 1 (bpsk, 4qam, 16qam, 64qam)");
        app->add_option("--mod2", mod2, "modulation of UE 2");
        app->add_option("--grid", grid, "Eb/N0 grid, start:step:stop or comma list (dB)");
        app->add_option("--mode", mode, "dynamic, fixed or both")->check(CLI::IsMember({"dynamic", "fixed", "both"}));
        app->add_option("--model", model, "channel model: exact or printed")->check(CLI::IsMember({"exact", "printed"}));
        app->add_option("--weights", weights, "BER weights: paper or gray_exact")
            ->check(CLI::IsMember({"paper", "gray_exact"}));
    }

    ExperimentSpec spec(const Common& c) const {
        std::ostringstream cfg;
        cfg << "experiment = " << (mode == "both" ? "sic-compare" : "ber-vs-snr") << '\n'
            << "p1_db = " << p1_db << "\np2_db = " << p2_db << '\n'
            << "sigma1_sq_db = " << s1_db << "\nsigma2_sq_db = " << s2_db << '\n'
            << "mod1 = " << mod1 << "\nmod2 = " << mod2 << "\ngrid = " << grid << '\n'
            << "mode = " << (mode == "both" ? "dynamic" : mode) << '\n'
            << "channel_model = " << model << "\nber_weights = " << weights << '\n'
            << "seed = " << c.seed << "\nthreads = " << c.threads << '\n';
        if (c.trials) cfg << "trials = " << c.trials << '\n';
        return validate_spec(cfg.str());
    }
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void apply_common(ExperimentSpec& s, const Common& c, const CLI::App& root) {
    if (root.count("--seed")) s.seed = c.seed;
    if (c.trials) s.trials = c.trials;
    if (root.count("--threads") || std::getenv("NOMA_SIC_THREADS")) s.threads = c.threads;
}

void report_written(const std::vector<std::filesystem::path>& paths) {
    for (const auto& p : paths) std::cout << "wrote " << p.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-user uplink NOMA with dynamic SIC: closed-form BER and Monte Carlo"};
    // Global flags may follow the subcommand.
    app.fallthrough();
    app.require_subcommand(1);
    Common common;
    app.add_option("--seed", common.seed, "master RNG seed");
    app.add_option("--trials", common.trials, "Monte Carlo trials per grid point");
    app.add_option("--out", common.out, "output directory");
    app.add_option("--threads", common.threads, "worker threads (0: all cores); NOMA_SIC_THREADS overrides");

    auto* run = app.add_subcommand("run", "run an experiment described by a config file");
    std::string config_path;
    run->add_option("config", config_path, "config file")->required();

    auto* fit = app.add_subcommand("fit", "fit Gaussian mixtures to Re{h} at each decoding position");
    double fit_s1 = 20.0, fit_s2 = 7.958800173;
    int fit_terms = 1;
    std::size_t fit_samples = 1000000;
    fit->add_option("--sigma1-sq-db", fit_s1, "average channel gain of UE 1 (dB)");
    fit->add_option("--sigma2-sq-db", fit_s2, "average channel gain of UE 2 (dB)");
    fit->add_option("--terms", fit_terms, "mixture terms (1 or 3)");
    fit->add_option("--samples", fit_samples, "samples per density");

    auto* pdf = app.add_subcommand("pdf", "ordered channel-gain densities");
    double pdf_s1 = 20.0, pdf_s2 = 7.96, pdf_xmax = 0.0;
    int pdf_ue = 1, pdf_order = 1, pdf_points = 50;
    std::string pdf_model = "exact";
    pdf->add_option("--sigma1-sq-db", pdf_s1);
    pdf->add_option("--sigma2-sq-db", pdf_s2);
    pdf->add_option("--ue", pdf_ue)->check(CLI::Range(1, 2));
    pdf->add_option("--order", pdf_order)->check(CLI::Range(1, 2));
    pdf->add_option("--points", pdf_points)->check(CLI::PositiveNumber);
    pdf->add_option("--x-max", pdf_xmax, "upper end of the x grid (default 3 sigma)");
    pdf->add_option("--model", pdf_model)->check(CLI::IsMember({"exact", "printed"}));

    auto* pep = app.add_subcommand("pep", "one closed-form PEP with its term ledger and quadrature check");
    ScenarioFlags pep_flags;
    pep_flags.attach(pep);
    std::string pep_case = "first";
    int pep_ue = 1;
    double pep_ebn0 = 10.0, pep_delta = 2.0, pep_other = 1.0;
    pep->add_option("--case", pep_case)->check(CLI::IsMember({"first", "second-correct", "second-incorrect"}));
    pep->add_option("--ue", pep_ue)->check(CLI::Range(1, 2));
    pep->add_option("--ebn0", pep_ebn0, "Eb/N0 (dB)");
    pep->add_option("--delta", pep_delta, "|Delta_n| in units of d");
    pep->add_option("--other", pep_other, "interferer amplitude or residual, in units of the other UE's d");

    auto* ber_theory = app.add_subcommand("ber-theory", "theoretical BER curve as CSV on stdout");
    ScenarioFlags theory_flags;
    theory_flags.attach(ber_theory);
    auto* ber_sim = app.add_subcommand("ber-sim", "simulated BER curve as CSV on stdout");
    ScenarioFlags sim_flags;
    sim_flags.attach(ber_sim);

    auto* reproduce = app.add_subcommand("reproduce", "regenerate the data behind a figure");
    std::string figure;
    reproduce->add_option("figure", figure, "fig3 .. fig7")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6", "fig7"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version exit 0; every other parse failure is a usage error.
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (const char* env = std::getenv("NOMA_SIC_THREADS")) {
        try {
            common.threads = static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            std::cerr << "error: NOMA_SIC_THREADS must be a nonnegative integer\n";
            return 2;
        }
    }

    try {
        if (*run) {
            ExperimentSpec spec;
            try {
                spec = validate_spec(read_file(config_path));
            } catch (const ConfigError& e) {
                std::cerr << "usage error: " << config_path << ": " << e.what() << '\n';
                return 2;
            }
            apply_common(spec, common, app);
            report_written(run_experiment(spec, common.out));
        } else if (*reproduce) {
            for (auto spec : figure_presets(figure)) {
                apply_common(spec, common, app);
                report_written(run_experiment(spec, common.out));
            }
        } else if (*fit) {
            ExperimentSpec spec;
            spec.kind = ExperimentKind::fit_report;
            spec.sigma1_sq_db = fit_s1;
            spec.sigma2_sq_db = fit_s2;
            spec.fit_terms = fit_terms;
            spec.fit_samples = fit_samples;
            spec.seed = common.seed;
            std::cout << compute_experiment(spec).extra_files.front().second;
        } else if (*pdf) {
            const ChannelParams ch{{std::sqrt(std::pow(10.0, pdf_s1 / 10.0)), std::sqrt(std::pow(10.0, pdf_s2 / 10.0))}};
            const auto model = pdf_model == "exact" ? ChannelModel::exact : ChannelModel::printed;
            const double xmax = pdf_xmax > 0.0 ? pdf_xmax : 3.0 * ch.sigma[pdf_ue - 1];
            std::cout << "x,pdf\n" << std::setprecision(10);
            for (int i = 0; i <= pdf_points; ++i) {
                const double x = xmax * i / pdf_points;
                std::cout << x << ',' << ordered_gain_pdf(x, pdf_ue, pdf_order, ch, model) << '\n';
            }
        } else if (*pep) {
            const ExperimentSpec spec = pep_flags.spec(common);
            const Scenario sc = spec.scenario(0.0);
            const int m = 3 - pep_ue;
            const double d_n = scaling_factor(sc.order_of(pep_ue));
            const double d_m = scaling_factor(sc.order_of(m));
            PepContext ctx;
            ctx.p1 = sc.p1;
            ctx.p2 = sc.p2;
            ctx.n0 = ebn0_to_n0(pep_ebn0);
            ctx.delta_n = pep_delta * d_n;
            const auto mix = exact_mixtures(sc.channel);
            TermLedger ledger;
            double closed = 0.0, quad = 0.0;
            if (pep_case == "first") {
                const auto s = ordered_gain_scales(pep_ue, 1, sc.channel, spec.channel_model);
                ctx.sigma_n = s[0];
                ctx.sigma_m = s[1];
                ctx.kind = OtherKind::interferer;
                ctx.other = pep_other * d_m;
                ctx.mixture = mix.at(m, 2);
                closed = pep_first(ctx, &ledger);
                quad = pep_first_quadrature(ctx);
            } else {
                const double s = ordered_gain_scales(pep_ue, 2, sc.channel, spec.channel_model)[0];
                if (pep_case == "second-correct") {
                    closed = pep_second_correct(ctx.delta_n, s, sc.p2, ctx.n0);
                    quad = pep_second_correct_quadrature(ctx.delta_n, s, sc.p2, ctx.n0);
                } else {
                    ctx.sigma_n = ctx.sigma_m = s;
                    ctx.kind = OtherKind::residual;
                    ctx.other = pep_other * d_m;
                    ctx.mixture = mix.at(m, 1);
                    closed = pep_second_incorrect(ctx, &ledger);
                    quad = pep_second_incorrect_quadrature(ctx);
                }
            }
            std::cout << std::setprecision(12);
            for (const auto& [name, value] : ledger.entries()) std::cout << name << " = " << value << '\n';
            std::cout << "closed_form = " << closed << "\nquadrature = " << quad
                      << "\nrelative_gap = " << std::abs(closed - quad) / quad << '\n';
        } else if (*ber_theory || *ber_sim) {
            const bool theory = static_cast<bool>(*ber_theory);
            ExperimentSpec spec = (theory ? theory_flags : sim_flags).spec(common);
            spec.emit_theory = theory;
            spec.emit_sim = !theory;
            write_result_csv(std::cout, compute_experiment(spec).rows);
        }
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
