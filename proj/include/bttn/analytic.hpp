#pragma once

#include "bttn/channel.hpp"
#include "bttn/specfun.hpp"

namespace bttn {
namespace analytic {

struct MomentPair {
    double mean = 0.0;
    double variance = 0.0;
};

// Moments of a product of independent nonnegative variables.
MomentPair product_moments(const MomentPair& a, const MomentPair& b);

// Direct path: product of two exponential power gains.
MomentPair direct_link_moments(const channel::SystemParams& p,
                               const channel::DerivedGains& g);

// Gamma model of the RIS cascade sum, kept exactly as the source formulas
// print it: the (k', theta') pair, the moment accessors E = k'theta',
// V = k'theta'^2, and the density/CDF written with the N*k' exponent.
// Note the moment pair tracks the amplitude-level sum, not the squared
// sum; see the module documentation for the consequences.
struct RisSumGamma {
    double k_prime = 0.0;
    double theta_prime = 0.0;
    double nk = 0.0; // N * k_prime, the exponent the printed density uses

    double mean() const { return k_prime * theta_prime; }
    double variance() const { return k_prime * theta_prime * theta_prime; }
    double pdf(double y) const;
    double cdf(double y) const;
};

// throws std::domain_error when N = 0 (no RIS term exists)
RisSumGamma ris_sum_gamma(const channel::SystemParams& p,
                          const channel::DerivedGains& g);

// throws std::domain_error when N = 0
MomentPair ris_link_moments(const channel::SystemParams& p,
                            const channel::DerivedGains& g);

// Direct plus RIS contributions treated as independent; N = 0 drops the
// RIS term.
MomentPair total_snr_moments(const channel::SystemParams& p,
                             const channel::DerivedGains& g);

struct GammaApprox {
    double k = 0.0;
    double theta = 0.0;
};

// Moment-matched gamma fit: k = mean^2/variance, theta = variance/mean.
// throws std::domain_error on nonpositive mean or variance.
GammaApprox fit_gamma(const MomentPair& m);

// Full pipeline: derive gains, total moments, fit.
GammaApprox fit_from_params(const channel::SystemParams& p);

double snr_pdf(double g, const GammaApprox& fit);
double snr_cdf(double g, const GammaApprox& fit);

// threshold 2^r_t - 1 applied to the fitted CDF
double outage_probability(const channel::SystemParams& p);

// Mean conditional error probability E[Q(sqrt(2 gamma))] under the fitted
// gamma, evaluated by quadrature and cross-checked against the contour
// route on every call.
double bit_error_rate(const channel::SystemParams& p);

// Mean log2(1 + gamma) under the fitted gamma, quadrature with the same
// dual-route cross-check.
double average_capacity(const channel::SystemParams& p);

// Metric evaluation directly from a fitted (k, theta), used by the
// pipeline functions above and by validation code that fits empirical
// moments.
double ber_for_fit(const GammaApprox& fit);
double ac_for_fit(const GammaApprox& fit);
double op_for_fit(const GammaApprox& fit, double r_t);

} // namespace analytic
} // namespace bttn
