#include "noma_sic/experiment.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "noma_sic/errors.hpp"
#include "noma_sic/gaussfit.hpp"

namespace noma_sic {

namespace {

const std::map<ExperimentKind, std::string>& kind_names() {
    static const std::map<ExperimentKind, std::string> names = {
        {ExperimentKind::ber_vs_snr, "ber-vs-snr"},
        {ExperimentKind::power_ratio_sweep, "power-ratio-sweep"},
        {ExperimentKind::channel_gap_sweep, "channel-gap-sweep"},
        {ExperimentKind::sic_compare, "sic-compare"},
        {ExperimentKind::hetero, "hetero"},
        {ExperimentKind::fit_report, "fit-report"},
        {ExperimentKind::pdf_report, "pdf-report"},
    };
    return names;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    // Shortest form that parses back to the same double.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(line, "key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::uint64_t parse_count(const std::string& v, int line, const std::string& key) {
    const double d = parse_double(v, line, key);
    if (!(d >= 0.0) || d != std::floor(d) || d > 1e18)
        throw ConfigError(line, "key '" + key + "': expected a nonnegative integer, got '" + v + "'");
    return static_cast<std::uint64_t>(d);
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(line, "key '" + key + "': expected true or false, got '" + v + "'");
}

int parse_modulation(const std::string& v, int line, const std::string& key) {
    static const std::map<std::string, int> names = {
        {"bpsk", 2}, {"2", 2}, {"4qam", 4}, {"qpsk", 4}, {"4", 4}, {"16qam", 16}, {"16", 16}, {"64qam", 64}, {"64", 64}};
    std::string low = v;
    for (auto& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const auto it = names.find(low);
    if (it == names.end()) throw ConfigError(line, "key '" + key + "': unsupported modulation '" + v + "'");
    return it->second;
}

std::string modulation_name(int m) {
    switch (m) {
        case 2: return "bpsk";
        case 4: return "4qam";
        case 16: return "16qam";
        default: return "64qam";
    }
}

}  // namespace

std::string to_string(ExperimentKind k) { return kind_names().at(k); }

ExperimentKind experiment_kind_from_string(const std::string& s) {
    for (const auto& [k, name] : kind_names())
        if (name == s) return k;
    throw DomainError("unknown experiment kind '" + s + "'");
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    const std::string t = trim(text);
    if (t.empty()) throw DomainError("empty grid");
    if (t.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(std::stod(trim(item)));
        if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0])
            throw DomainError("grid range must be start:step:stop with step > 0");
        const auto n = static_cast<long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
        for (long i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
        return out;
    }
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const std::string s = trim(item);
        out.push_back(std::stod(s, &used));
        if (used != s.size()) throw DomainError("grid entry '" + s + "' is not a number");
    }
    return out;
}

void ExperimentSpec::validate() const {
    if (name.empty() || name.find('/') != std::string::npos) throw DomainError("name must be a plain file stem");
    if (!supported_order(m1) || !supported_order(m2)) throw DomainError("unsupported modulation order");
    if (grid.empty()) throw DomainError("empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly increasing");
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (!emit_theory && !emit_sim) throw DomainError("at least one of emit_theory / emit_sim must be true");
    if (fit_terms != 1 && fit_terms != 3) throw DomainError("fit_terms must be 1 or 3");
    if (kind == ExperimentKind::power_ratio_sweep) {
        if (grid.front() < 0.0) throw DomainError("power ratios must be >= 0 dB");
    } else if (p1_db <= p2_db) {
        throw DomainError("p1_db must exceed p2_db: the UE decoded first takes the larger power share");
    }
}

Scenario ExperimentSpec::scenario(double x) const {
    double p1 = db_to_linear(p1_db);
    double p2 = db_to_linear(p2_db);
    double s1 = sigma1_sq_db;
    const double s2 = sigma2_sq_db;
    if (kind == ExperimentKind::power_ratio_sweep) {
        p1 = db_to_linear(x);
        p2 = 1.0;
    } else if (kind == ExperimentKind::channel_gap_sweep) {
        s1 = s2 + x;
    }
    Scenario sc;
    sc.p1 = p1 / (p1 + p2);
    sc.p2 = p2 / (p1 + p2);
    sc.channel = ChannelParams{{std::sqrt(db_to_linear(s1)), std::sqrt(db_to_linear(s2))}};
    sc.m1 = m1;
    sc.m2 = m2;
    return sc;
}

SimConfig ExperimentSpec::sim_config(double x, SicMode m) const {
    const Scenario sc = scenario(x);
    SimConfig cfg;
    cfg.channel = sc.channel;
    cfg.p1 = sc.p1;
    cfg.p2 = sc.p2;
    cfg.m1 = m1;
    cfg.m2 = m2;
    cfg.trials = trials;
    cfg.mode = m;
    cfg.seed = seed;
    cfg.threads = threads;
    const bool snr_axis = kind == ExperimentKind::ber_vs_snr || kind == ExperimentKind::sic_compare ||
                          kind == ExperimentKind::hetero;
    cfg.ebn0_db = {snr_axis ? x : ebn0_db};
    return cfg;
}

ExperimentSpec validate_spec(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    int p_line = 0;
    std::map<std::string, int> seen;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
        const std::string key = trim(content.substr(0, eq));
        const std::string val = trim(content.substr(eq + 1));
        if (val.empty()) throw ConfigError(line, "key '" + key + "' has no value");
        if (seen.count(key)) throw ConfigError(line, "key '" + key + "' repeated (first on line " + std::to_string(seen[key]) + ")");
        seen[key] = line;

        if (key == "experiment") {
            try {
                spec.kind = experiment_kind_from_string(val);
            } catch (const DomainError& e) {
                throw ConfigError(line, e.what());
            }
        } else if (key == "name") {
            spec.name = val;
        } else if (key == "p1_db") {
            spec.p1_db = parse_double(val, line, key);
            p_line = std::max(p_line, line);
        } else if (key == "p2_db") {
            spec.p2_db = parse_double(val, line, key);
            p_line = std::max(p_line, line);
        } else if (key == "sigma1_sq_db") {
            spec.sigma1_sq_db = parse_double(val, line, key);
        } else if (key == "sigma2_sq_db") {
            spec.sigma2_sq_db = parse_double(val, line, key);
        } else if (key == "mod1") {
            spec.m1 = parse_modulation(val, line, key);
        } else if (key == "mod2") {
            spec.m2 = parse_modulation(val, line, key);
        } else if (key == "grid") {
            try {
                spec.grid = parse_grid(val);
            } catch (const std::exception& e) {
                throw ConfigError(line, std::string("key 'grid': ") + e.what());
            }
        } else if (key == "ebn0_db") {
            spec.ebn0_db = parse_double(val, line, key);
        } else if (key == "trials") {
            spec.trials = parse_count(val, line, key);
        } else if (key == "mode") {
            if (val == "dynamic") spec.mode = SicMode::dynamic;
            else if (val == "fixed") spec.mode = SicMode::fixed;
            else throw ConfigError(line, "key 'mode': expected dynamic or fixed, got '" + val + "'");
        } else if (key == "seed") {
            spec.seed = parse_count(val, line, key);
        } else if (key == "threads") {
            spec.threads = static_cast<unsigned>(parse_count(val, line, key));
        } else if (key == "emit_theory") {
            spec.emit_theory = parse_bool(val, line, key);
        } else if (key == "emit_sim") {
            spec.emit_sim = parse_bool(val, line, key);
        } else if (key == "channel_model") {
            if (val == "exact") spec.channel_model = ChannelModel::exact;
            else if (val == "printed") spec.channel_model = ChannelModel::printed;
            else throw ConfigError(line, "key 'channel_model': expected exact or printed, got '" + val + "'");
        } else if (key == "ber_weights") {
            if (val == "paper") spec.ber_weights = BerWeights::paper;
            else if (val == "gray_exact") spec.ber_weights = BerWeights::gray_exact;
            else throw ConfigError(line, "key 'ber_weights': expected paper or gray_exact, got '" + val + "'");
        } else if (key == "fit_terms") {
            spec.fit_terms = static_cast<int>(parse_count(val, line, key));
        } else if (key == "fit_samples") {
            spec.fit_samples = parse_count(val, line, key);
        } else {
            throw ConfigError(line, "unknown key '" + key + "'");
        }
    }
    if (spec.kind != ExperimentKind::power_ratio_sweep && spec.p1_db <= spec.p2_db)
        throw ConfigError(p_line, "p1_db must exceed p2_db: the UE decoded first (stronger channel) takes the larger power share");
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw ConfigError(0, e.what());
    }
    return spec;
}

std::string spec_to_text(const ExperimentSpec& s) {
    std::ostringstream os;
    std::string grid;
    for (std::size_t i = 0; i < s.grid.size(); ++i) grid += (i ? "," : "") + fmt_double(s.grid[i]);
    os << "experiment = " << to_string(s.kind) << '\n'
       << "name = " << s.name << '\n'
       << "p1_db = " << fmt_double(s.p1_db) << '\n'
       << "p2_db = " << fmt_double(s.p2_db) << '\n'
       << "sigma1_sq_db = " << fmt_double(s.sigma1_sq_db) << '\n'
       << "sigma2_sq_db = " << fmt_double(s.sigma2_sq_db) << '\n'
       << "mod1 = " << modulation_name(s.m1) << '\n'
       << "mod2 = " << modulation_name(s.m2) << '\n'
       << "grid = " << grid << '\n'
       << "ebn0_db = " << fmt_double(s.ebn0_db) << '\n'
       << "trials = " << s.trials << '\n'
       << "mode = " << (s.mode == SicMode::dynamic ? "dynamic" : "fixed") << '\n'
       << "seed = " << s.seed << '\n'
       << "threads = " << s.threads << '\n'
       << "emit_theory = " << (s.emit_theory ? "true" : "false") << '\n'
       << "emit_sim = " << (s.emit_sim ? "true" : "false") << '\n'
       << "channel_model = " << (s.channel_model == ChannelModel::exact ? "exact" : "printed") << '\n'
       << "ber_weights = " << (s.ber_weights == BerWeights::paper ? "paper" : "gray_exact") << '\n'
       << "fit_terms = " << s.fit_terms << '\n'
       << "fit_samples = " << s.fit_samples << '\n';
    return os.str();
}

namespace {

void add_sim_rows(ExperimentResult& res, double x, const CurvePoint& p, const std::string& mode, bool buckets) {
    for (int u = 0; u < 2; ++u)
        res.rows.push_back({x, u + 1, mode, "sim", p.ue[u].ber, p.ue[u].ci95, p.trials});
    if (!buckets) return;
    for (int b = 0; b < 2; ++b)
        for (int u = 0; u < 2; ++u) {
            const auto& e = p.bucket[b][u];
            const double nan = std::numeric_limits<double>::quiet_NaN();
            res.buckets.push_back({x, b + 1, u + 1, "sim", e.empty() ? nan : e.ber, e.empty() ? nan : e.ci95,
                                   p.bucket_trials[b]});
        }
}

void add_theory_rows(ExperimentResult& res, double x, const ExperimentSpec& spec, double ebn0, bool fixed_too,
                     bool dynamic_mode) {
    const Scenario sc = spec.scenario(x);
    TheoryOptions opts;
    opts.model = spec.channel_model;
    opts.weights = spec.ber_weights;
    if (dynamic_mode) {
        const TheoryPoint tp = theory_point(sc, ebn0, opts);
        for (int u = 0; u < 2; ++u) res.rows.push_back({x, u + 1, "dynamic", "theory", tp.ue[u].total, 0.0, 0});
        for (int b = 0; b < 2; ++b)
            for (int u = 0; u < 2; ++u) res.buckets.push_back({x, b + 1, u + 1, "theory", tp.bucket[b][u], 0.0, 0});
    }
    if (fixed_too) {
        const auto f = theory_fixed(sc, ebn0, spec.ber_weights);
        for (int u = 0; u < 2; ++u) res.rows.push_back({x, u + 1, "fixed", "theory", f[u], 0.0, 0});
    }
}

std::string fit_report(const ExperimentSpec& spec) {
    const Scenario sc = spec.scenario(0.0);
    SimConfig cfg;
    cfg.channel = sc.channel;
    cfg.seed = spec.seed;
    std::ostringstream os;
    os << "# Gaussian fits of Re{h_ue} at each decoding position, " << spec.fit_samples << " samples, N_G = "
       << spec.fit_terms << "\n";
    for (int ue = 1; ue <= 2; ++ue)
        for (int order = 1; order <= 2; ++order) {
            const auto samples = collect_statistics(cfg, StatisticKind::real_part, ue, order, spec.fit_samples);
            const auto fit = fit_mixture(histogram_pdf(samples), spec.fit_terms);
            os << "# ue " << ue << " order " << order << " rms " << fmt_double(fit.rms) << '\n';
            write_mixture(os, fit.mixture);
        }
    return os.str();
}

std::string pdf_report(const ExperimentSpec& spec) {
    const Scenario sc = spec.scenario(0.0);
    SimConfig cfg;
    cfg.channel = sc.channel;
    cfg.seed = spec.seed;
    std::ostringstream os;
    os << "x,ue,order,source,value\n";
    for (int ue = 1; ue <= 2; ++ue)
        for (int order = 1; order <= 2; ++order) {
            const auto samples = collect_statistics(cfg, StatisticKind::gain, ue, order, spec.fit_samples);
            const auto pdf = histogram_pdf(samples);
            const auto centers = pdf.centers();
            for (std::size_t i = 0; i < centers.size(); ++i) {
                os << fmt_double(centers[i]) << ',' << ue << ',' << order << ",sim," << fmt_double(pdf.density[i]) << '\n';
                os << fmt_double(centers[i]) << ',' << ue << ',' << order << ",theory,"
                   << fmt_double(ordered_gain_pdf(centers[i], ue, order, sc.channel, spec.channel_model)) << '\n';
            }
        }
    return os.str();
}

}  // namespace

ExperimentResult compute_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult res;
    if (spec.kind == ExperimentKind::fit_report) {
        res.extra_files.emplace_back(".fit", fit_report(spec));
        return res;
    }
    if (spec.kind == ExperimentKind::pdf_report) {
        res.extra_files.emplace_back("_pdf.csv", pdf_report(spec));
        return res;
    }

    const bool compare = spec.kind == ExperimentKind::sic_compare || spec.kind == ExperimentKind::hetero;
    const bool snr_axis = compare || spec.kind == ExperimentKind::ber_vs_snr;
    const bool want_dynamic = compare || spec.mode == SicMode::dynamic;
    const bool want_fixed = compare || spec.mode == SicMode::fixed;

    for (double x : spec.grid) {
        const double ebn0 = snr_axis ? x : spec.ebn0_db;
        if (spec.emit_theory) add_theory_rows(res, x, spec, ebn0, want_fixed, want_dynamic);
        if (spec.emit_sim) {
            if (want_dynamic) {
                const Simulator sim(spec.sim_config(x, SicMode::dynamic));
                add_sim_rows(res, x, run_point(sim, 0), "dynamic", true);
            }
            if (want_fixed) {
                const Simulator sim(spec.sim_config(x, SicMode::fixed));
                add_sim_rows(res, x, run_point(sim, 0), "fixed", !want_dynamic);
            }
        }
    }
    return res;
}

void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << "param,ue,mode,source,value,ci95,trials\n";
    for (const auto& r : rows)
        os << fmt_double(r.param) << ',' << r.ue << ',' << r.mode << ',' << r.source << ',' << fmt_double(r.value)
           << ',' << fmt_double(r.ci95) << ',' << r.trials << '\n';
}

std::vector<ResultRow> read_result_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || trim(line) != "param,ue,mode,source,value,ci95,trials")
        throw DomainError("result CSV: unexpected header");
    std::vector<ResultRow> rows;
    int n = 1;
    while (std::getline(is, line)) {
        ++n;
        if (trim(line).empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(trim(item));
        if (f.size() != 7) throw ConfigError(n, "result CSV: expected 7 fields");
        ResultRow r;
        r.param = std::stod(f[0]);
        r.ue = std::stoi(f[1]);
        r.mode = f[2];
        r.source = f[3];
        r.value = std::stod(f[4]);
        r.ci95 = std::stod(f[5]);
        r.trials = std::stoull(f[6]);
        rows.push_back(r);
    }
    return rows;
}

void write_bucket_csv(std::ostream& os, const std::vector<BucketRow>& rows) {
    os << "param,bucket,ue,source,value,ci95,trials\n";
    for (const auto& r : rows)
        os << fmt_double(r.param) << ',' << r.bucket << ',' << r.ue << ',' << r.source << ',' << fmt_double(r.value)
           << ',' << fmt_double(r.ci95) << ',' << r.trials << '\n';
}

std::string manifest_text(const ExperimentSpec& spec, double wall_seconds) {
    std::ostringstream os;
    os << "# run manifest; feed back to `noma-sic run` to reproduce the CSVs\n"
       << "# wall_time_s " << std::fixed << std::setprecision(3) << wall_seconds << '\n'
       << spec_to_text(spec);
    return os.str();
}

std::string gnuplot_script(const ExperimentSpec& spec, const std::string& csv_name) {
    std::string xlabel = "Eb/N0 (dB)";
    if (spec.kind == ExperimentKind::power_ratio_sweep) xlabel = "10 log10(p1/p2) (dB)";
    if (spec.kind == ExperimentKind::channel_gap_sweep) xlabel = "sigma1^2 - sigma2^2 (dB)";
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set logscale y\n"
       << "set format y '10^{%L}'\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set ylabel 'BER'\n"
       << "set key outside right\n"
       << "set terminal pngcairo size 900,600\n"
       << "set output '" << spec.name << ".png'\n"
       << "sel(ue, mode, src) = sprintf(\"< awk -F, '$2==%d && $3==\\\"%s\\\" && $4==\\\"%s\\\"' " << csv_name
       << "\", ue, mode, src)\n"
       << "plot ";
    bool first = true;
    for (const char* mode : {"dynamic", "fixed"})
        for (int ue = 1; ue <= 2; ++ue)
            for (const char* src : {"theory", "sim"}) {
                os << (first ? "" : ", \\\n     ") << "sel(" << ue << ", '" << mode << "', '" << src
                   << "') using 1:5 with " << (std::string(src) == "theory" ? "lines" : "points") << " title 'UE"
                   << ue << ' ' << mode << ' ' << src << "'";
                first = false;
            }
    os << '\n';
    return os.str();
}

std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentResult res = compute_experiment(spec);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& suffix, const std::string& content) {
        const auto path = out_dir / (spec.name + suffix);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        f << content;
        written.push_back(path);
    };
    if (!res.rows.empty()) {
        std::ostringstream csv, buckets;
        write_result_csv(csv, res.rows);
        emit(".csv", csv.str());
        if (!res.buckets.empty()) {
            write_bucket_csv(buckets, res.buckets);
            emit("_buckets.csv", buckets.str());
        }
        emit(".gp", gnuplot_script(spec, spec.name + ".csv"));
    }
    for (const auto& [suffix, content] : res.extra_files) emit(suffix, content);
    emit(".manifest", manifest_text(spec, wall));
    return written;
}

std::vector<ExperimentSpec> figure_presets(const std::string& figure) {
    std::vector<ExperimentSpec> out;
    const std::vector<int> all_orders = {2, 4, 16, 64};
    if (figure == "fig3") {
        ExperimentSpec s;
        s.name = "fig3";
        s.grid = parse_grid("0:5:30");
        s.trials = 1000000;
        out.push_back(s);
    } else if (figure == "fig4") {
        for (int m : all_orders) {
            ExperimentSpec s;
            s.kind = ExperimentKind::power_ratio_sweep;
            s.name = "fig4_" + modulation_name(m);
            s.m1 = s.m2 = m;
            s.sigma1_sq_db = 10.0;
            s.sigma2_sq_db = 0.0;
            s.ebn0_db = 20.0;
            s.grid = parse_grid("0:0.5:20");
            out.push_back(s);
        }
    } else if (figure == "fig5") {
        for (int m : all_orders) {
            ExperimentSpec s;
            s.kind = ExperimentKind::channel_gap_sweep;
            s.name = "fig5_" + modulation_name(m);
            s.m1 = s.m2 = m;
            s.p1_db = -0.04;
            s.p2_db = -20.0;
            s.sigma2_sq_db = 10.0;
            s.ebn0_db = 20.0;
            s.grid = parse_grid("0:5:40");
            out.push_back(s);
        }
    } else if (figure == "fig6") {
        struct Sub {
            int m;
            double p1, p2, s1, s2;
        };
        const Sub subs[] = {{2, -2.22, -3.98, 20.0, 7.96},
                            {4, -0.46, -10.0, 20.0, 7.96},
                            {16, -0.04, -20.0, 38.06, 26.02},
                            {64, -0.04, -20.0, 38.06, 26.02}};
        for (const auto& sub : subs) {
            ExperimentSpec s;
            s.kind = ExperimentKind::sic_compare;
            s.name = "fig6_" + modulation_name(sub.m);
            s.m1 = s.m2 = sub.m;
            s.p1_db = sub.p1;
            s.p2_db = sub.p2;
            s.sigma1_sq_db = sub.s1;
            s.sigma2_sq_db = sub.s2;
            s.grid = parse_grid("0:5:50");
            out.push_back(s);
        }
    } else if (figure == "fig7") {
        struct Cfg {
            int m1, m2;
            double p1, p2, s1, s2;
        };
        const Cfg cfgs[] = {{4, 2, -0.46, -10.0, 20.0, 7.96},
                            {16, 4, -0.46, -10.0, 20.0, 7.96},
                            {64, 2, -0.04, -20.0, 38.06, 26.02}};
        int i = 1;
        for (const auto& c : cfgs) {
            ExperimentSpec s;
            s.kind = ExperimentKind::hetero;
            s.name = "fig7_config" + std::to_string(i++);
            s.m1 = c.m1;
            s.m2 = c.m2;
            s.p1_db = c.p1;
            s.p2_db = c.p2;
            s.sigma1_sq_db = c.s1;
            s.sigma2_sq_db = c.s2;
            s.grid = parse_grid("0:5:50");
            out.push_back(s);
        }
    } else {
        throw DomainError("unknown figure '" + figure + "' (expected fig3 .. fig7)");
    }
    return out;
}

}  // namespace noma_sic
