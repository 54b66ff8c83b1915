#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bttn/channel.hpp"
#include "bttn/rng.hpp"

#include <cmath>
#include <string>

using namespace bttn;

namespace {

double rel_err(double got, double want)
{
    if (want == 0.0)
        return std::fabs(got);
    return std::fabs(got - want) / std::fabs(want);
}

const double TWO_PI = 6.2831853071795864769;

} // namespace

TEST_CASE("validate accepts defaults and names offending fields")
{
    channel::SystemParams p;
    CHECK_NOTHROW(channel::validate(p));

    auto field_in_message = [](channel::SystemParams bad, const char* field) {
        try {
            channel::validate(bad);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what()).find(field) != std::string::npos;
        }
        return false;
    };

    channel::SystemParams p1;
    p1.d_st = 0.0;
    CHECK(field_in_message(p1, "d_st"));
    channel::SystemParams p2;
    p2.chi = -1.0;
    CHECK(field_in_message(p2, "chi"));
    channel::SystemParams p3;
    p3.n_elements = -4;
    CHECK(field_in_message(p3, "n_elements"));
    channel::SystemParams p4;
    p4.lambda_t = 1.5;
    CHECK(field_in_message(p4, "lambda_t"));
    channel::SystemParams p5;
    p5.alpha = -0.2;
    CHECK(field_in_message(p5, "alpha"));
    channel::SystemParams p6;
    p6.r_t = 0.0;
    CHECK(field_in_message(p6, "r_t"));
}

TEST_CASE("derive_gains unit conversion and path-loss identities")
{
    channel::SystemParams p; // 1 dBm over -50 dBm noise
    const channel::DerivedGains g = channel::derive_gains(p);
    CHECK(rel_err(g.gamma0, 125892.54117941672) <= 1e-15);

    // unit distances collapse both path factors
    channel::SystemParams unit = p;
    unit.d_tl = 1.0;
    const channel::DerivedGains gu = channel::derive_gains(unit);
    CHECK(gu.gbar_x == gu.gamma0);
    CHECK(gu.gbar_y == gu.gamma0);

    // d_rl = 1.5, chi = 3.5 divides the RIS path by 1.5^3.5
    channel::SystemParams q = unit;
    q.d_rl = 1.5;
    const channel::DerivedGains gq = channel::derive_gains(q);
    CHECK(rel_err(gq.gbar_y, gq.gamma0 / 4.133513940946613) <= 1e-15);
    CHECK(gq.gbar_x == gq.gamma0);

    // brute-force power-law cross-check on an uneven geometry
    channel::SystemParams r = p;
    r.d_st = 2.0;
    r.d_tl = 3.0;
    r.d_tr = 1.25;
    r.d_rl = 0.75;
    r.chi = 3.0;
    const channel::DerivedGains gr = channel::derive_gains(r);
    CHECK(rel_err(gr.gbar_x, gr.gamma0 / (8.0 * 27.0)) <= 1e-14);
    CHECK(rel_err(gr.gbar_y,
                  gr.gamma0 / (8.0 * 1.953125 * 0.421875)) <= 1e-14);
}

TEST_CASE("sample_draw layout and reproducibility")
{
    channel::SystemParams p;
    p.n_elements = 7;

    rng::TrialStream s1(42, 9);
    const channel::ChannelDraw a = channel::sample_draw(p, s1);
    rng::TrialStream s2(42, 9);
    const channel::ChannelDraw b = channel::sample_draw(p, s2);

    CHECK(a.h_st == b.h_st);
    CHECK(a.h_tl == b.h_tl);
    CHECK(a.h_st_ris == b.h_st_ris);
    REQUIRE(a.h_tr.size() == 7);
    REQUIRE(a.phi_ph.size() == 7);
    for (int n = 0; n < 7; ++n) {
        CHECK(a.h_tr[n] == b.h_tr[n]);
        CHECK(a.h_rl[n] == b.h_rl[n]);
        CHECK(a.delta_ph[n] == b.delta_ph[n]);
        CHECK(a.zeta_ph[n] == b.zeta_ph[n]);
        CHECK(a.phi_ph[n] == b.phi_ph[n]);
    }

    // another trial index gives different fading
    rng::TrialStream s3(42, 10);
    const channel::ChannelDraw c = channel::sample_draw(p, s3);
    CHECK(c.h_st != a.h_st);

    for (int n = 0; n < 7; ++n) {
        CHECK(a.h_tr[n] >= 0.0);
        CHECK(a.h_rl[n] >= 0.0);
        CHECK(a.delta_ph[n] >= 0.0);
        CHECK(a.delta_ph[n] < TWO_PI);
        CHECK(a.zeta_ph[n] >= 0.0);
        CHECK(a.zeta_ph[n] < TWO_PI);
        CHECK(a.phi_ph[n] >= 0.0);
        CHECK(a.phi_ph[n] < TWO_PI);
        // ideal initialization: phi is delta + zeta up to a full turn
        const double res =
            std::remainder(a.phi_ph[n] - a.delta_ph[n] - a.zeta_ph[n], TWO_PI);
        CHECK(std::fabs(res) <= 1e-12);
    }
}

TEST_CASE("independent-source mode only adds the extra amplitude")
{
    channel::SystemParams p;
    p.n_elements = 5;

    rng::TrialStream s1(7, 3);
    const channel::ChannelDraw shared = channel::sample_draw(p, s1, false);
    rng::TrialStream s2(7, 3);
    const channel::ChannelDraw indep = channel::sample_draw(p, s2, true);

    CHECK(shared.h_st_ris == shared.h_st);
    CHECK(indep.h_st_ris != indep.h_st);
    CHECK(shared.h_st == indep.h_st);
    CHECK(shared.h_tl == indep.h_tl);
    for (int n = 0; n < 5; ++n) {
        CHECK(shared.h_tr[n] == indep.h_tr[n]);
        CHECK(shared.h_rl[n] == indep.h_rl[n]);
        CHECK(shared.delta_ph[n] == indep.delta_ph[n]);
        CHECK(shared.zeta_ph[n] == indep.zeta_ph[n]);
    }
}

TEST_CASE("sampled amplitudes match the configured fading means")
{
    channel::SystemParams p;
    p.n_elements = 2;
    p.alpha = 1.0;
    p.delta1 = 1.0;

    const int trials = 1000000;
    double sum_hst2 = 0.0;
    double sum_htr = 0.0;
    for (int t = 0; t < trials; ++t) {
        rng::TrialStream s(2024, t);
        const channel::ChannelDraw d = channel::sample_draw(p, s);
        sum_hst2 += d.h_st * d.h_st;
        sum_htr += d.h_tr[0];
    }
    // squared amplitude is exponential(alpha): mean 1, sd 1
    CHECK(std::fabs(sum_hst2 / trials - 1.0) <= 3e-3);
    // Rayleigh mean sqrt(pi*delta1/4), sd sqrt((4-pi)/4) = 0.4633
    CHECK(std::fabs(sum_htr / trials - 0.88622692545275801) <= 3 * 0.4633e-3);
}

TEST_CASE("snr_exact structure")
{
    channel::SystemParams p;
    p.n_elements = 0;
    p.lambda_t = 0.8;
    const channel::DerivedGains g = channel::derive_gains(p);

    channel::ChannelDraw d;
    d.h_st = 1.3;
    d.h_tl = 0.4;
    d.h_st_ris = d.h_st;
    // no RIS: only the direct product survives
    const double want =
        p.lambda_t * p.lambda_t * g.gbar_x * d.h_st * d.h_st * d.h_tl * d.h_tl;
    CHECK(rel_err(channel::snr_exact(p, d), want) <= 1e-15);

    // blocked source link
    channel::ChannelDraw blocked = d;
    blocked.h_st = 0.0;
    blocked.h_st_ris = 0.0;
    CHECK(channel::snr_idealized(p, blocked) == 0.0);

    // N=1 with unit everything: coherent (1+1)^2 = 4
    channel::SystemParams u;
    u.p_s_dbm = u.noise_dbm; // gamma0 = 1
    u.d_tl = 1.0;
    u.n_elements = 1;
    channel::ChannelDraw one;
    one.h_st = 1.0;
    one.h_tl = 1.0;
    one.h_st_ris = 1.0;
    one.h_tr = {1.0};
    one.h_rl = {1.0};
    one.delta_ph = {0.0};
    one.zeta_ph = {0.0};
    one.phi_ph = {0.0};
    CHECK(channel::snr_idealized(u, one) == 4.0);
    CHECK(channel::snr_exact(u, one) == 4.0);
}

TEST_CASE("zero residual phases reproduce the idealized form exactly")
{
    channel::SystemParams p;
    p.n_elements = 3;
    channel::ChannelDraw d;
    d.h_st = 0.9;
    d.h_tl = 1.1;
    d.h_st_ris = d.h_st;
    d.h_tr = {0.5, 1.2, 0.3};
    d.h_rl = {0.8, 0.1, 1.7};
    d.delta_ph = {0.0, 0.0, 0.0};
    d.zeta_ph = {0.0, 0.0, 0.0};
    d.phi_ph = {0.0, 0.0, 0.0};
    CHECK(channel::snr_exact(p, d) == channel::snr_idealized(p, d));
}

TEST_CASE("sampled ideal phases agree with the idealized form")
{
    channel::SystemParams p;
    p.n_elements = 12;
    for (int t = 0; t < 1000; ++t) {
        rng::TrialStream s(5, t);
        const channel::ChannelDraw d = channel::sample_draw(p, s);
        CHECK(rel_err(channel::snr_exact(p, d), channel::snr_idealized(p, d)) <=
              1e-12);
    }
}

TEST_CASE("ideal phase assignment maximizes the exact SNR")
{
    channel::SystemParams p;
    p.n_elements = 6;
    const int draws = 50;
    const int tries = 100;
    for (int t = 0; t < draws; ++t) {
        rng::TrialStream s(77, t);
        channel::ChannelDraw d = channel::sample_draw(p, s);
        const double best = channel::snr_exact(p, d);
        rng::TrialStream ps(78, t);
        for (int j = 0; j < tries; ++j) {
            for (int n = 0; n < p.n_elements; ++n)
                d.phi_ph[n] = ps.phase();
            CHECK(channel::snr_exact(p, d) <= best * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("transmit power scales every SNR sample exactly")
{
    channel::SystemParams lo;
    lo.p_s_dbm = lo.noise_dbm; // gamma0 = 1
    lo.n_elements = 9;
    channel::SystemParams hi = lo;
    hi.p_s_dbm = lo.noise_dbm + 100.0; // gamma0 = 1e10, exact in binary64

    for (int t = 0; t < 200; ++t) {
        rng::TrialStream s1(11, t);
        rng::TrialStream s2(11, t);
        const channel::ChannelDraw d1 = channel::sample_draw(lo, s1);
        const channel::ChannelDraw d2 = channel::sample_draw(hi, s2);
        CHECK(channel::snr_exact(hi, d2) == 1e10 * channel::snr_exact(lo, d1));
        CHECK(channel::snr_idealized(hi, d2) ==
              1e10 * channel::snr_idealized(lo, d1));
    }
}

TEST_CASE("appending an element never decreases the idealized SNR")
{
    channel::SystemParams small;
    small.n_elements = 8;
    channel::SystemParams big = small;
    big.n_elements = 9;

    for (int t = 0; t < 500; ++t) {
        // same stream prefix: the 9-element draw extends the 8-element one
        rng::TrialStream s1(3, t);
        rng::TrialStream s2(3, t);
        const channel::ChannelDraw d8 = channel::sample_draw(small, s1);
        const channel::ChannelDraw d9 = channel::sample_draw(big, s2);
        CHECK(d8.h_tr[7] == d9.h_tr[7]);
        CHECK(channel::snr_idealized(big, d9) >=
              channel::snr_idealized(small, d8) * (1.0 - 1e-15));
    }
}
