#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "noma_sic/analytic.hpp"
#include "noma_sic/errors.hpp"
#include "noma_sic/experiment.hpp"
#include "noma_sic/gaussfit.hpp"
#include "noma_sic/simcore.hpp"

namespace py = pybind11;
using namespace noma_sic;

namespace {

ChannelModel model_from(const std::string& s) {
    if (s == "exact") return ChannelModel::exact;
    if (s == "printed") return ChannelModel::printed;
    throw DomainError("model must be 'exact' or 'printed'");
}

BerWeights weights_from(const std::string& s) {
    if (s == "paper") return BerWeights::paper;
    if (s == "gray_exact") return BerWeights::gray_exact;
    throw DomainError("weights must be 'paper' or 'gray_exact'");
}

py::dict estimate_dict(const BerEstimate& e) {
    py::dict d;
    d["ber"] = e.empty() ? py::object(py::none()) : py::object(py::float_(e.ber));
    d["ci95"] = e.ci95;
    d["errors"] = e.errors;
    d["bits"] = e.bits;
    return d;
}

}  // namespace

PYBIND11_MODULE(_noma_sic, m) {
    m.doc() = "Two-user uplink NOMA with dynamic SIC: closed-form BER, fits and Monte Carlo";

    m.def("q_exact", &q_exact, py::arg("x"));
    m.def("q_chiani", &q_chiani, py::arg("x"));
    m.def("order_probability", &order_probability, py::arg("sigma_n"), py::arg("sigma_m"),
          "P(|h_n| >= |h_m|) for Rayleigh scales sigma = sqrt(E|h|^2)");
    m.def(
        "ordered_gain_pdf",
        [](double x, int ue, int order, double sigma1, double sigma2, const std::string& model) {
            return ordered_gain_pdf(x, ue, order, ChannelParams{{sigma1, sigma2}}, model_from(model));
        },
        py::arg("x"), py::arg("ue"), py::arg("order"), py::arg("sigma1"), py::arg("sigma2"), py::arg("model") = "exact");
    m.def("pep_second_correct", &pep_second_correct, py::arg("delta"), py::arg("sigma"), py::arg("p2"), py::arg("n0"));
    m.def("ebn0_to_n0", &ebn0_to_n0, py::arg("ebn0_db"), py::arg("eb") = 1.0);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](double sigma1, double sigma2, double p1, double p2, int m1, int m2) {
                 Scenario s;
                 s.channel = ChannelParams{{sigma1, sigma2}};
                 s.p1 = p1;
                 s.p2 = p2;
                 s.m1 = m1;
                 s.m2 = m2;
                 s.validate();
                 return s;
             }),
             py::arg("sigma1"), py::arg("sigma2"), py::arg("p1"), py::arg("p2"), py::arg("m1") = 2, py::arg("m2") = 2)
        .def_readwrite("p1", &Scenario::p1)
        .def_readwrite("p2", &Scenario::p2)
        .def_readwrite("m1", &Scenario::m1)
        .def_readwrite("m2", &Scenario::m2)
        .def_property_readonly("sigma", [](const Scenario& s) { return s.channel.sigma; });

    m.def(
        "theory_ber",
        [](const Scenario& sc, double ebn0_db, const std::string& model, const std::string& weights) {
            TheoryOptions opts;
            opts.model = model_from(model);
            opts.weights = weights_from(weights);
            const auto tp = theory_point(sc, ebn0_db, opts);
            return std::array<double, 2>{tp.ue[0].total, tp.ue[1].total};
        },
        py::arg("scenario"), py::arg("ebn0_db"), py::arg("model") = "exact", py::arg("weights") = "paper",
        "Dynamic-SIC BER of (UE 1, UE 2)");
    m.def(
        "theory_fixed",
        [](const Scenario& sc, double ebn0_db, const std::string& weights) {
            return theory_fixed(sc, ebn0_db, weights_from(weights));
        },
        py::arg("scenario"), py::arg("ebn0_db"), py::arg("weights") = "paper", "Fixed-order SIC BER of (UE 1, UE 2)");

    m.def(
        "simulate",
        [](const Scenario& sc, std::vector<double> ebn0_db, std::uint64_t trials, std::uint64_t seed,
           const std::string& mode, unsigned threads) {
            SimConfig cfg;
            cfg.channel = sc.channel;
            cfg.p1 = sc.p1;
            cfg.p2 = sc.p2;
            cfg.m1 = sc.m1;
            cfg.m2 = sc.m2;
            cfg.ebn0_db = std::move(ebn0_db);
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.threads = threads;
            if (mode == "dynamic") cfg.mode = SicMode::dynamic;
            else if (mode == "fixed") cfg.mode = SicMode::fixed;
            else throw DomainError("mode must be 'dynamic' or 'fixed'");
            BerCurve curve;
            {
                py::gil_scoped_release release;
                curve = run_curve(cfg);
            }
            py::list out;
            for (const auto& p : curve.points) {
                py::dict d;
                d["ebn0_db"] = p.param;
                d["trials"] = p.trials;
                d["ue"] = py::make_tuple(estimate_dict(p.ue[0]), estimate_dict(p.ue[1]));
                d["bucket_trials"] = p.bucket_trials;
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("ebn0_db"), py::arg("trials") = 100000, py::arg("seed") = 1,
        py::arg("mode") = "dynamic", py::arg("threads") = 1);

    m.def(
        "fit_mixture",
        [](const std::vector<double>& samples, int n_terms) {
            const auto fit = fit_mixture(histogram_pdf(samples), n_terms);
            std::vector<std::array<double, 3>> terms;
            for (const auto& t : fit.mixture.terms) terms.push_back({t.a, t.b, t.c});
            return py::make_tuple(terms, fit.rms);
        },
        py::arg("samples"), py::arg("n_terms") = 1,
        "Fit sum a exp(-((x-b)/c)^2) to the histogram of samples; returns ([(a, b, c)], rms)");
    m.def(
        "conditioned_real_part",
        [](int ue, int order, double sigma1, double sigma2, std::size_t count, std::uint64_t seed) {
            Rng rng = make_substream(seed, 0, 0);
            return sample_conditioned_real_part(ue, order, ChannelParams{{sigma1, sigma2}}, rng, count);
        },
        py::arg("ue"), py::arg("order"), py::arg("sigma1"), py::arg("sigma2"), py::arg("count"), py::arg("seed") = 1);

    m.def(
        "run_config",
        [](const std::string& text, const std::filesystem::path& out_dir) {
            const auto spec = validate_spec(text);
            py::gil_scoped_release release;
            return run_experiment(spec, out_dir);
        },
        py::arg("config_text"), py::arg("out_dir"), "Run a config (same format as `noma-sic run`); returns written paths");

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
