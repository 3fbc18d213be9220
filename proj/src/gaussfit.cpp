#include "noma_sic/gaussfit.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "noma_sic/errors.hpp"

namespace noma_sic {

void GaussianMixture::validate() const {
    if (terms.empty()) throw DomainError("mixture has no terms");
    for (const auto& t : terms) {
        if (t.c == 0.0 || !std::isfinite(t.a) || !std::isfinite(t.b) || !std::isfinite(t.c))
            throw DomainError("mixture term needs finite coefficients and c != 0");
    }
}

double GaussianMixture::mass() const {
    double m = 0.0;
    for (const auto& t : terms) m += t.a * std::sqrt(std::numbers::pi) * std::abs(t.c);
    return m;
}

double eval_mixture(const GaussianMixture& mix, double x) {
    double s = 0.0;
    for (const auto& t : mix.terms) {
        const double u = (x - t.b) / t.c;
        s += t.a * std::exp(-u * u);
    }
    return s;
}

namespace {

GaussianMixture unpack(const Eigen::VectorXd& p) {
    GaussianMixture m;
    for (Eigen::Index i = 0; i < p.size(); i += 3) m.terms.push_back({p[i], p[i + 1], p[i + 2]});
    return m;
}

}  // namespace

FitResult fit_mixture(const EmpiricalPdf& pdf, int n_terms, const FitOptions& opts) {
    if (n_terms != 1 && n_terms != 3) throw DomainError("fit_mixture: N_G must be 1 or 3");
    if (pdf.density.size() < 30) throw DomainError("fit_mixture: need at least 30 bins");

    const auto xs = pdf.centers();
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::VectorXd x(n), y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        x[k] = xs[k];
        y[k] = pdf.density[k];
    }

    // Moment initialization.
    double mass = 0.0, mean = 0.0, peak = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double w = (pdf.edges[k + 1] - pdf.edges[k]) * pdf.density[k];
        mass += w;
        mean += w * xs[k];
        peak = std::max(peak, pdf.density[k]);
    }
    mean /= mass;
    double var = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k)
        var += (pdf.edges[k + 1] - pdf.edges[k]) * pdf.density[k] * (xs[k] - mean) * (xs[k] - mean);
    const double sd = std::sqrt(var / mass);

    Eigen::VectorXd p(3 * n_terms);
    p.head(3) << peak, mean, std::numbers::sqrt2 * sd;
    if (n_terms == 3) {
        p.segment(3, 3) << peak / 4.0, mean - sd, std::numbers::sqrt2 * sd;
        p.segment(6, 3) << peak / 4.0, mean + sd, std::numbers::sqrt2 * sd;
    }

    auto residuals = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        r.setZero(n);
        if (jac) jac->setZero(n, q.size());
        for (Eigen::Index i = 0; i < q.size(); i += 3) {
            const double a = q[i], b = q[i + 1], c = q[i + 2];
            for (Eigen::Index k = 0; k < n; ++k) {
                const double u = (x[k] - b) / c;
                const double e = std::exp(-u * u);
                r[k] += a * e;
                if (jac) {
                    (*jac)(k, i) = e;
                    (*jac)(k, i + 1) = a * e * 2.0 * u / c;
                    (*jac)(k, i + 2) = a * e * 2.0 * u * u / c;
                }
            }
        }
        r -= y;
    };

    Eigen::VectorXd r, r_try;
    Eigen::MatrixXd jac;
    residuals(p, r, &jac);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    int it = 0;
    bool converged = false;
    for (; it < opts.max_iterations; ++it) {
        const Eigen::VectorXd grad = jac.transpose() * r;
        if (grad.lpNorm<Eigen::Infinity>() < opts.gradient_tol) {
            converged = true;
            break;
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        bool improved = false;
        while (lambda < 1e16) {
            Eigen::MatrixXd a = jtj;
            a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
            const Eigen::VectorXd step = a.ldlt().solve(-grad);
            const Eigen::VectorXd trial = p + step;
            residuals(trial, r_try, nullptr);
            const double c_try = r_try.squaredNorm();
            if (std::isfinite(c_try) && c_try < cost) {
                const bool tiny = step.norm() <= 1e-14 * (p.norm() + 1e-14);
                p = trial;
                cost = c_try;
                lambda = std::max(lambda / 3.0, 1e-12);
                improved = true;
                if (tiny) converged = true;
                break;
            }
            lambda *= 4.0;
        }
        // No descent direction left at machine precision: a stationary point.
        if (!improved) converged = true;
        residuals(p, r, &jac);
        if (converged) break;
    }

    FitResult out;
    out.mixture = unpack(p);
    out.rms = std::sqrt(cost / static_cast<double>(n));
    out.iterations = it;
    if (!converged) throw FitError("fit_mixture: iteration budget exhausted", {p.data(), p.data() + p.size()}, out.rms);
    for (auto& t : out.mixture.terms) t.c = std::abs(t.c);
    return out;
}

void write_mixture(std::ostream& os, const GaussianMixture& mix) {
    os << "ng " << mix.terms.size() << '\n';
    os << std::setprecision(17);
    for (const auto& t : mix.terms) os << t.a << ' ' << t.b << ' ' << t.c << '\n';
}

GaussianMixture read_mixture(std::istream& is) {
    std::string key;
    std::size_t ng = 0;
    if (!(is >> key >> ng) || key != "ng") throw DomainError("mixture text must start with 'ng <count>'");
    GaussianMixture m;
    for (std::size_t i = 0; i < ng; ++i) {
        GaussTerm t{};
        if (!(is >> t.a >> t.b >> t.c)) throw DomainError("mixture text: expected 'a b c' for term " + std::to_string(i + 1));
        m.terms.push_back(t);
    }
    m.validate();
    return m;
}

std::string to_string(const GaussianMixture& mix) {
    std::ostringstream os;
    write_mixture(os, mix);
    return os.str();
}

GaussianMixture mixture_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_mixture(is);
}

}  // namespace noma_sic
