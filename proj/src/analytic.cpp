#include "bttn/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace bttn {
namespace analytic {

namespace {

const double PI = 3.14159265358979323846;

// quadrature settings for the metric integrals: relative-only convergence
// so the dual-route cross-check stays meaningful when the error rate
// itself is tiny
specfun::QuadSpec metric_quad()
{
    specfun::QuadSpec qs;
    qs.rel_tol = 1e-10;
    qs.abs_tol = 0.0;
    qs.max_refinements = 40;
    return qs;
}

void check_route_agreement(double quad, double contour, const char* what)
{
    const double scale = std::max(std::fabs(quad), std::fabs(contour));
    if (scale < 1e-250)
        return; // both vanish; nothing meaningful to compare
    if (std::fabs(quad - contour) > 1e-8 * scale)
        throw std::runtime_error(std::string(what) +
                                 ": defining-integral and contour evaluations disagree");
}

} // namespace

MomentPair product_moments(const MomentPair& a, const MomentPair& b)
{
    MomentPair r;
    r.mean = a.mean * b.mean;
    r.variance = a.variance * b.variance + a.variance * b.mean * b.mean +
                 b.variance * a.mean * a.mean;
    return r;
}

MomentPair direct_link_moments(const channel::SystemParams& p,
                               const channel::DerivedGains& g)
{
    MomentPair r;
    r.mean = g.gbar_x * p.alpha * p.beta;
    r.variance = 3.0 * g.gbar_x * g.gbar_x * p.alpha * p.alpha * p.beta * p.beta;
    return r;
}

double RisSumGamma::pdf(double y) const
{
    if (y < 0.0)
        return 0.0;
    if (y == 0.0)
        return nk > 2.0 ? 0.0 : INFINITY;
    // printed form: y^((nk-2)/2) e^(-sqrt(y)/theta') / (2 theta'^nk Gamma(nk))
    const double lp = 0.5 * (nk - 2.0) * std::log(y) - std::sqrt(y) / theta_prime -
                      nk * std::log(theta_prime) - specfun::ln_gamma(nk) -
                      std::log(2.0);
    return std::exp(lp);
}

double RisSumGamma::cdf(double y) const
{
    if (y <= 0.0)
        return 0.0;
    return specfun::reg_lower_inc_gamma(nk, std::sqrt(y) / theta_prime);
}

RisSumGamma ris_sum_gamma(const channel::SystemParams& p,
                          const channel::DerivedGains& g)
{
    if (p.n_elements < 1)
        throw std::domain_error("ris_sum_gamma: no RIS term exists for N = 0");
    const double n = static_cast<double>(p.n_elements);
    RisSumGamma r;
    r.k_prime = n * PI * PI / (16.0 - PI * PI);
    r.theta_prime = (16.0 - PI * PI) *
                    std::sqrt(g.gbar_y * p.delta1 * p.delta2) / (4.0 * PI);
    r.nk = n * r.k_prime;
    return r;
}

MomentPair ris_link_moments(const channel::SystemParams& p,
                            const channel::DerivedGains& g)
{
    if (p.n_elements < 1)
        throw std::domain_error("ris_link_moments: no RIS term exists for N = 0");
    const double n = static_cast<double>(p.n_elements);
    const double gdd = g.gbar_y * p.delta1 * p.delta2;
    MomentPair r;
    r.mean = p.alpha * n * PI * std::sqrt(gdd) / 4.0;
    r.variance = p.alpha * p.alpha * n * gdd *
                 (2.0 + (n - 2.0) * PI * PI / 16.0);
    return r;
}

MomentPair total_snr_moments(const channel::SystemParams& p,
                             const channel::DerivedGains& g)
{
    MomentPair total = direct_link_moments(p, g);
    if (p.n_elements >= 1) {
        const MomentPair ris = ris_link_moments(p, g);
        total.mean += ris.mean;
        total.variance += ris.variance;
    }
    return total;
}

GammaApprox fit_gamma(const MomentPair& m)
{
    if (!(m.mean > 0.0))
        throw std::domain_error("fit_gamma: mean must be > 0");
    if (!(m.variance > 0.0))
        throw std::domain_error("fit_gamma: variance must be > 0");
    GammaApprox f;
    f.k = m.mean * m.mean / m.variance;
    f.theta = m.variance / m.mean;
    return f;
}

GammaApprox fit_from_params(const channel::SystemParams& p)
{
    const channel::DerivedGains g = channel::derive_gains(p);
    return fit_gamma(total_snr_moments(p, g));
}

double snr_pdf(double gval, const GammaApprox& fit)
{
    if (gval < 0.0)
        return 0.0;
    if (gval == 0.0) {
        if (fit.k > 1.0)
            return 0.0;
        if (fit.k == 1.0)
            return 1.0 / fit.theta;
        return INFINITY;
    }
    const double lp = (fit.k - 1.0) * std::log(gval) - gval / fit.theta -
                      fit.k * std::log(fit.theta) - specfun::ln_gamma(fit.k);
    return std::exp(lp);
}

double snr_cdf(double gval, const GammaApprox& fit)
{
    if (gval <= 0.0)
        return 0.0;
    return specfun::reg_lower_inc_gamma(fit.k, gval / fit.theta);
}

double op_for_fit(const GammaApprox& fit, double r_t)
{
    const double gamma_th = std::pow(2.0, r_t) - 1.0;
    return snr_cdf(gamma_th, fit);
}

double ber_for_fit(const GammaApprox& fit)
{
    const double quad = specfun::expect_under_gamma(
        [](double g) { return specfun::q_function(std::sqrt(2.0 * g)); },
        fit.k, fit.theta, metric_quad());
    const double contour = specfun::meijer_g_ber(fit.k, fit.theta);
    check_route_agreement(quad, contour, "bit_error_rate");
    return quad;
}

double ac_for_fit(const GammaApprox& fit)
{
    const double quad = specfun::expect_under_gamma(
        [](double g) { return std::log2(1.0 + g); },
        fit.k, fit.theta, metric_quad());
    const double contour = specfun::meijer_g_ac(fit.k, fit.theta);
    check_route_agreement(quad, contour, "average_capacity");
    return quad;
}

double outage_probability(const channel::SystemParams& p)
{
    return op_for_fit(fit_from_params(p), p.r_t);
}

double bit_error_rate(const channel::SystemParams& p)
{
    return ber_for_fit(fit_from_params(p));
}

double average_capacity(const channel::SystemParams& p)
{
    return ac_for_fit(fit_from_params(p));
}

} // namespace analytic
} // namespace bttn
