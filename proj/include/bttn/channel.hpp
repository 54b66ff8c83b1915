#pragma once

#include "bttn/rng.hpp"

#include <vector>

namespace bttn {
namespace channel {

// Every physical input of the link model.  Defaults are the reference
// operating point used throughout the experiment presets.
struct SystemParams {
    double p_s_dbm = 1.0;     // source transmit power, dBm
    double noise_dbm = -50.0; // listener noise power, dBm
    double d_st = 1.0;        // source -> talker distance, m
    double d_tl = 1.5;        // talker -> listener distance, m
    double d_tr = 1.0;        // talker -> RIS distance, m
    double d_rl = 1.0;        // RIS -> listener distance, m
    double chi = 3.5;         // path-loss exponent
    int n_elements = 20;      // RIS element count N (0 = no RIS)
    double alpha = 1.0;       // E[h_st^2]
    double beta = 1.0;        // E[h_tl^2]
    double delta1 = 1.0;      // E[h_tr_n^2]
    double delta2 = 1.0;      // E[h_rl_n^2]
    double lambda_t = 1.0;    // talker backscattering coefficient, (0,1]
    double r_t = 2.0;         // rate threshold, bits/s/Hz
};

// throws std::invalid_argument naming the offending field
void validate(const SystemParams& p);

struct DerivedGains {
    double gamma0; // linear transmit SNR P_s / sigma^2_L
    double gbar_x; // gamma0 / (d_st^chi * d_tl^chi)
    double gbar_y; // gamma0 / (d_st^chi * d_tr^chi * d_rl^chi)
};

DerivedGains derive_gains(const SystemParams& p);

// One fading realization.  h_st_ris is the source->talker amplitude seen by
// the RIS term: identical to h_st in the physical (shared) mode, an
// independent copy in independent-source mode.
struct ChannelDraw {
    double h_st = 0.0;
    double h_tl = 0.0;
    double h_st_ris = 0.0;
    std::vector<double> h_tr;
    std::vector<double> h_rl;
    std::vector<double> delta_ph;
    std::vector<double> zeta_ph;
    std::vector<double> phi_ph;
};

// Draws amplitudes and phases in a fixed order so a trial's stream layout
// never depends on configuration flags.  phi is initialized to the ideal
// setting delta + zeta.  When independent_source is set, one extra
// amplitude is drawn after the standard sequence and stored in h_st_ris.
ChannelDraw sample_draw(const SystemParams& p, rng::TrialStream& stream,
                        bool independent_source = false);

// Instantaneous SNR with the complex RIS sum using the draw's actual
// phases.  The direct and RIS contributions add coherently inside the
// squared magnitude, both scaled by their path-loss gains.
double snr_exact(const SystemParams& p, const ChannelDraw& d);

// Co-phased form: all RIS terms real and positive.  Equals snr_exact
// whenever every residual phase phi - delta - zeta is zero.
double snr_idealized(const SystemParams& p, const ChannelDraw& d);

} // namespace channel
} // namespace bttn
