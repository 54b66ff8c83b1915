#include "bttn/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bttn {
namespace channel {

namespace {

void require(bool ok, const char* field, const char* what)
{
    if (!ok)
        throw std::invalid_argument(std::string("SystemParams.") + field + ": " + what);
}

// path gains with the transmit SNR factored out, so scaling P_s scales
// every SNR sample by exactly the same factor
double path_x(const SystemParams& p)
{
    return 1.0 / (std::pow(p.d_st, p.chi) * std::pow(p.d_tl, p.chi));
}

double path_y(const SystemParams& p)
{
    return 1.0 / (std::pow(p.d_st, p.chi) * std::pow(p.d_tr, p.chi) *
                  std::pow(p.d_rl, p.chi));
}

} // namespace

void validate(const SystemParams& p)
{
    require(p.d_st > 0.0, "d_st", "must be > 0");
    require(p.d_tl > 0.0, "d_tl", "must be > 0");
    require(p.d_tr > 0.0, "d_tr", "must be > 0");
    require(p.d_rl > 0.0, "d_rl", "must be > 0");
    require(p.chi > 0.0, "chi", "must be > 0");
    require(p.n_elements >= 0, "n_elements", "must be >= 0");
    require(p.alpha > 0.0, "alpha", "must be > 0");
    require(p.beta > 0.0, "beta", "must be > 0");
    require(p.delta1 > 0.0, "delta1", "must be > 0");
    require(p.delta2 > 0.0, "delta2", "must be > 0");
    require(p.lambda_t > 0.0 && p.lambda_t <= 1.0, "lambda_t", "must be in (0, 1]");
    require(p.r_t > 0.0, "r_t", "must be > 0");
    require(std::isfinite(p.p_s_dbm), "p_s_dbm", "must be finite");
    require(std::isfinite(p.noise_dbm), "noise_dbm", "must be finite");
}

DerivedGains derive_gains(const SystemParams& p)
{
    validate(p);
    DerivedGains g;
    // dBm values become a linear power ratio; the milliwatt reference
    // cancels in the quotient
    g.gamma0 = std::pow(10.0, (p.p_s_dbm - p.noise_dbm) / 10.0);
    g.gbar_x = g.gamma0 / (std::pow(p.d_st, p.chi) * std::pow(p.d_tl, p.chi));
    g.gbar_y = g.gamma0 / (std::pow(p.d_st, p.chi) * std::pow(p.d_tr, p.chi) *
                           std::pow(p.d_rl, p.chi));
    return g;
}

ChannelDraw sample_draw(const SystemParams& p, rng::TrialStream& stream,
                        bool independent_source)
{
    const int n = p.n_elements;
    ChannelDraw d;
    d.h_st = stream.rayleigh(p.alpha);
    d.h_tl = stream.rayleigh(p.beta);
    d.h_tr.resize(n);
    d.h_rl.resize(n);
    d.delta_ph.resize(n);
    d.zeta_ph.resize(n);
    d.phi_ph.resize(n);
    for (int i = 0; i < n; ++i) {
        d.h_tr[i] = stream.rayleigh(p.delta1);
        d.h_rl[i] = stream.rayleigh(p.delta2);
        d.delta_ph[i] = stream.phase();
        d.zeta_ph[i] = stream.phase();
        d.phi_ph[i] = std::fmod(d.delta_ph[i] + d.zeta_ph[i],
                                6.2831853071795864769);
    }
    // extra draw last, so shared and independent runs agree on everything
    // drawn before it
    d.h_st_ris = independent_source ? stream.rayleigh(p.alpha) : d.h_st;
    return d;
}

double snr_exact(const SystemParams& p, const ChannelDraw& d)
{
    const double sx = std::sqrt(path_x(p));
    const double sy = std::sqrt(path_y(p));
    double sum_re = 0.0, sum_im = 0.0;
    for (std::size_t i = 0; i < d.h_tr.size(); ++i) {
        const double psi = d.phi_ph[i] - d.delta_ph[i] - d.zeta_ph[i];
        const double a = d.h_tr[i] * d.h_rl[i];
        sum_re += a * std::cos(psi);
        sum_im += a * std::sin(psi);
    }
    const double re = sx * d.h_st * d.h_tl + sy * d.h_st_ris * sum_re;
    const double im = sy * d.h_st_ris * sum_im;
    const double gamma0 = std::pow(10.0, (p.p_s_dbm - p.noise_dbm) / 10.0);
    // gamma0 multiplies last so a power rescale scales the sample exactly
    return gamma0 * (p.lambda_t * p.lambda_t * (re * re + im * im));
}

double snr_idealized(const SystemParams& p, const ChannelDraw& d)
{
    const double sx = std::sqrt(path_x(p));
    const double sy = std::sqrt(path_y(p));
    double sum = 0.0;
    for (std::size_t i = 0; i < d.h_tr.size(); ++i)
        sum += d.h_tr[i] * d.h_rl[i];
    const double amp = sx * d.h_st * d.h_tl + sy * d.h_st_ris * sum;
    const double gamma0 = std::pow(10.0, (p.p_s_dbm - p.noise_dbm) / 10.0);
    return gamma0 * (p.lambda_t * p.lambda_t * (amp * amp));
}

} // namespace channel
} // namespace bttn
