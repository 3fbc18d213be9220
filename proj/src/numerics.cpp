#include "noma_sic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/owens_t.hpp>

#include "noma_sic/errors.hpp"

namespace noma_sic {

void Quadrature::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("quadrature rel_tol must lie in (0,1)");
    if (!(abs_tol >= 0.0)) throw DomainError("quadrature abs_tol must be >= 0");
    if (max_subdivisions < 1) throw DomainError("quadrature needs at least one subdivision");
}

std::vector<double> EmpiricalPdf::centers() const {
    std::vector<double> c(density.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (edges[i] + edges[i + 1]);
    return c;
}

double EmpiricalPdf::mass() const {
    double m = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) m += density[i] * (edges[i + 1] - edges[i]);
    return m;
}

double q_exact(double x) {
    if (std::isnan(x)) throw DomainError("q_exact: NaN input");
    if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double q_chiani(double x) {
    if (!(x >= 0.0)) throw DomainError("q_chiani: defined for x >= 0 only");
    if (std::isinf(x)) return 0.0;
    return std::exp(-0.5 * x * x) / 12.0 + 0.25 * std::exp(-2.0 * x * x / 3.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

namespace {

// erfc(y) e^{y^2} for large positive y (asymptotic series, relative error < 1e-10 for y > 25).
double erfcx_large(double y) {
    const double r = 1.0 / (y * y);
    return (1.0 - 0.5 * r + 0.75 * r * r - 1.875 * r * r * r) / (y * std::sqrt(std::numbers::pi));
}

}  // namespace

double exp_erfc(double a, double b) {
    if (b < 25.0) {
        const double e = std::erfc(b);
        if (e == 0.0) return 0.0;
        return std::exp(a + std::log(e));
    }
    return std::exp(a - b * b) * erfcx_large(b);
}

double owens_t(double h, double a) {
    if (std::isinf(a)) {
        const double half_tail = 0.5 * normal_cdf(-std::abs(h));
        return a > 0 ? half_tail : -half_tail;
    }
    return boost::math::owens_t(h, a);
}

double bivariate_normal_cdf(double h, double k, double rho) {
    if (!(rho > -1.0 && rho < 1.0)) throw DomainError("bivariate_normal_cdf: |rho| must be < 1");
    if (h == -std::numeric_limits<double>::infinity() || k == -std::numeric_limits<double>::infinity())
        return 0.0;
    if (std::isinf(h)) return normal_cdf(k);
    if (std::isinf(k)) return normal_cdf(h);
    const double s = std::sqrt(1.0 - rho * rho);
    const double inf = std::numeric_limits<double>::infinity();
    auto ratio = [&](double num, double den) {
        if (den != 0.0) return num / (den * s);
        if (num == 0.0) return 0.0;
        return num > 0 ? inf : -inf;
    };
    const double ah = ratio(k - rho * h, h);
    const double ak = ratio(h - rho * k, k);
    const double beta = (h * k > 0.0 || (h * k == 0.0 && h + k >= 0.0)) ? 0.0 : 0.5;
    if (h == 0.0 && k == 0.0) return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
    return 0.5 * normal_cdf(h) + 0.5 * normal_cdf(k) - owens_t(h, ah) - owens_t(k, ak) - beta;
}

QuadratureResult integrate_semi_infinite_detail(const std::function<double(double)>& f,
                                                const Quadrature& quad) {
    quad.validate();
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    auto g = [&f](double t) {
        const double u = 1.0 - t;
        return f(t / u) / (u * u);
    };
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto eval = [&](double a, double b) {
        double err = 0.0;
        const double v = GK::integrate(g, a, b, 0, 0.0, &err);
        return Panel{a, b, v, err};
    };

    std::priority_queue<Panel> panels;
    Panel first = eval(0.0, 1.0);
    double total = first.value;
    double total_err = first.error;
    panels.push(first);
    int subdivisions = 1;
    while (total_err > std::max(quad.abs_tol, quad.rel_tol * std::abs(total))) {
        if (subdivisions >= quad.max_subdivisions || !std::isfinite(total)) {
            throw ConvergenceError("integrate_semi_infinite: subdivision budget exhausted", total, total_err);
        }
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = eval(worst.a, mid);
        Panel right = eval(mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++subdivisions;
        // Re-sum periodically so the running totals do not drift.
        if (subdivisions % 64 == 0) {
            auto copy = panels;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, total_err, subdivisions};
}

double integrate_semi_infinite(const std::function<double(double)>& f, const Quadrature& quad) {
    return integrate_semi_infinite_detail(f, quad).value;
}

double integrate_real_line(const std::function<double(double)>& f, const Quadrature& quad) {
    return integrate_semi_infinite([&f](double x) { return f(x) + f(-x); }, quad);
}

std::size_t rice_bins(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(2.0 * std::cbrt(static_cast<double>(n))));
}

EmpiricalPdf histogram_pdf(const std::vector<double>& samples, std::size_t bins) {
    if (samples.empty()) throw DomainError("histogram_pdf: empty sample set");
    if (bins == 0) bins = rice_bins(samples.size());
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("histogram_pdf: non-finite sample");

    EmpiricalPdf pdf;
    pdf.sample_count = samples.size();
    if (hi == lo) {
        // Degenerate mass: a single unit-width bin centered on the value.
        pdf.edges = {lo - 0.5, lo + 0.5};
        pdf.density = {1.0};
        return pdf;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    pdf.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) pdf.edges[i] = lo + width * static_cast<double>(i);
    pdf.edges.back() = hi;
    std::vector<std::size_t> counts(bins, 0);
    for (double s : samples) {
        auto idx = static_cast<std::size_t>((s - lo) / width);
        if (idx >= bins) idx = bins - 1;
        ++counts[idx];
    }
    pdf.density.resize(bins);
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < bins; ++i)
        pdf.density[i] = static_cast<double>(counts[i]) / (n * (pdf.edges[i + 1] - pdf.edges[i]));
    return pdf;
}

}  // namespace noma_sic
