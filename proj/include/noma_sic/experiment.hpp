#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "noma_sic/analytic.hpp"
#include "noma_sic/simcore.hpp"

namespace noma_sic {

enum class ExperimentKind { ber_vs_snr, power_ratio_sweep, channel_gap_sweep, sic_compare, hetero, fit_report, pdf_report };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

// Everything a run needs. Powers and channel variances are in dB here and
// converted once by scenario(); the grid is Eb/N0, the power ratio
// 10 log10(p1/p2) or the channel gap sigma1^2 - sigma2^2, depending on kind.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::ber_vs_snr;
    std::string name = "experiment";
    double p1_db = -2.22;
    double p2_db = -3.98;
    double sigma1_sq_db = 20.0;
    double sigma2_sq_db = 7.96;
    int m1 = 2;
    int m2 = 2;
    std::vector<double> grid{0, 5, 10, 15, 20, 25, 30};
    double ebn0_db = 20.0;  // fixed operating point of the sweeps
    std::uint64_t trials = 100000;
    SicMode mode = SicMode::dynamic;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool emit_theory = true;
    bool emit_sim = true;
    ChannelModel channel_model = ChannelModel::exact;
    BerWeights ber_weights = BerWeights::paper;
    int fit_terms = 1;
    std::size_t fit_samples = 1000000;

    void validate() const;
    // Linear, normalized scenario at grid value `x` (sweeps move powers or channels).
    Scenario scenario(double x) const;
    SimConfig sim_config(double x, SicMode m) const;
};

// Flat `key = value` text, '#' starts a comment. Unknown keys and bad values
// raise ConfigError carrying the line number.
ExperimentSpec validate_spec(const std::string& text);
std::string spec_to_text(const ExperimentSpec& spec);

std::vector<double> parse_grid(const std::string& text);

struct ResultRow {
    double param = 0.0;
    int ue = 1;
    std::string mode;    // dynamic | fixed
    std::string source;  // theory | sim
    double value = 0.0;  // NaN marks an empty simulation bucket
    double ci95 = 0.0;
    std::uint64_t trials = 0;
};

struct BucketRow {
    double param = 0.0;
    int bucket = 1;  // 1: |h1| >= |h2|, 2: |h2| > |h1|
    int ue = 1;
    std::string source;
    double value = 0.0;
    double ci95 = 0.0;
    std::uint64_t trials = 0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<BucketRow> buckets;
    // Additional outputs as (file suffix, content), e.g. fitted coefficients.
    std::vector<std::pair<std::string, std::string>> extra_files;
};

ExperimentResult compute_experiment(const ExperimentSpec& spec);

void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_result_csv(std::istream& is);
void write_bucket_csv(std::ostream& os, const std::vector<BucketRow>& rows);

std::string manifest_text(const ExperimentSpec& spec, double wall_seconds);
std::string gnuplot_script(const ExperimentSpec& spec, const std::string& csv_name);

// Computes and writes <name>.csv, <name>_buckets.csv, <name>.gp, <name>.manifest
// and any extra files into out_dir. Returns the written paths.
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir);

// Parameter sets of the paper's figures: fig3 .. fig7.
std::vector<ExperimentSpec> figure_presets(const std::string& figure);

}  // namespace noma_sic
