#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "noma_sic/numerics.hpp"

namespace noma_sic {

struct GaussTerm {
    double a, b, c;
};

// sum_i a_i exp(-(x - b_i)^2 / c_i^2); a_i may be negative.
struct GaussianMixture {
    std::vector<GaussTerm> terms;

    void validate() const;
    std::size_t size() const { return terms.size(); }
    // Integral over the real line: sum a_i sqrt(pi) |c_i|.
    double mass() const;
};

double eval_mixture(const GaussianMixture& mix, double x);

struct FitResult {
    GaussianMixture mixture;
    double rms = 0.0;
    int iterations = 0;
};

struct FitOptions {
    int max_iterations = 500;
    double gradient_tol = 1e-10;
};

FitResult fit_mixture(const EmpiricalPdf& pdf, int n_terms, const FitOptions& opts = {});

void write_mixture(std::ostream& os, const GaussianMixture& mix);
GaussianMixture read_mixture(std::istream& is);
std::string to_string(const GaussianMixture& mix);
GaussianMixture mixture_from_string(const std::string& text);

}  // namespace noma_sic
