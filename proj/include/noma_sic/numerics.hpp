#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace noma_sic {

struct Quadrature {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const;
};

struct EmpiricalPdf {
    std::vector<double> edges;
    std::vector<double> density;
    std::size_t sample_count = 0;

    std::vector<double> centers() const;
    double mass() const;
};

// Gaussian tail P(Z > x).
double q_exact(double x);

// Two-exponential approximation (1/12)e^{-x^2/2} + (1/4)e^{-2x^2/3}, x >= 0.
double q_chiani(double x);

double normal_cdf(double x);
double normal_pdf(double x);

// e^a * erfc(b), stable when erfc underflows or e^a overflows separately.
double exp_erfc(double a, double b);

// Owen's T extended to a = +-inf.
double owens_t(double h, double a);

// P(X <= h, Y <= k) for a standard bivariate normal with correlation rho.
double bivariate_normal_cdf(double h, double k, double rho);

struct QuadratureResult {
    double value;
    double error;
    int subdivisions;
};

// Integral over [0, inf) via x = t/(1-t) and globally adaptive 15-point panels.
QuadratureResult integrate_semi_infinite_detail(const std::function<double(double)>& f,
                                                const Quadrature& quad = {});
double integrate_semi_infinite(const std::function<double(double)>& f, const Quadrature& quad = {});

// Integral over the whole real line, folded onto [0, inf).
double integrate_real_line(const std::function<double(double)>& f, const Quadrature& quad = {});

// Rice rule: ceil(2 N^{1/3}).
std::size_t rice_bins(std::size_t n);

// bins == 0 selects the Rice rule.
EmpiricalPdf histogram_pdf(const std::vector<double>& samples, std::size_t bins = 0);

}  // namespace noma_sic
