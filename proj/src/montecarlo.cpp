#include "bttn/montecarlo.hpp"

#include "bttn/specfun.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace bttn {
namespace montecarlo {

namespace {

const std::uint64_t BLOCK = 4096;

struct Sums {
    double s[3] = {0.0, 0.0, 0.0};
    double ss[3] = {0.0, 0.0, 0.0};
};

int resolve_workers(int requested)
{
    if (requested > 0)
        return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs per_trial for trial indices [0, n_trials).  Each 4096-trial block is
// summed privately and stored in a slot keyed by block index; the slots are
// then reduced in index order.  Workers only race for block indices, so the
// result is bit-identical no matter how many threads run.
template <class Fn>
Sums run_trials(std::uint64_t n_trials, std::uint64_t seed, int workers,
                const Fn& per_trial)
{
    const std::uint64_t n_blocks = (n_trials + BLOCK - 1) / BLOCK;
    std::vector<Sums> slots(static_cast<std::size_t>(n_blocks));
    std::atomic<std::uint64_t> next{0};

    auto work = [&]() {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= n_blocks)
                return;
            const std::uint64_t lo = b * BLOCK;
            const std::uint64_t hi = std::min(n_trials, lo + BLOCK);
            Sums local;
            for (std::uint64_t t = lo; t < hi; ++t) {
                rng::TrialStream stream(seed, t);
                const std::array<double, 3> v = per_trial(stream);
                for (int i = 0; i < 3; ++i) {
                    local.s[i] += v[i];
                    local.ss[i] += v[i] * v[i];
                }
            }
            slots[static_cast<std::size_t>(b)] = local;
        }
    };

    const int nw = std::min<std::uint64_t>(resolve_workers(workers), n_blocks);
    if (nw <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nw));
        for (int i = 0; i < nw; ++i)
            pool.emplace_back(work);
        for (std::thread& th : pool)
            th.join();
    }

    Sums total;
    for (const Sums& sl : slots)
        for (int i = 0; i < 3; ++i) {
            total.s[i] += sl.s[i];
            total.ss[i] += sl.ss[i];
        }
    return total;
}

McEstimate make_estimate(double s, double ss, std::uint64_t n)
{
    McEstimate e;
    e.n_trials = n;
    if (n == 0)
        return e;
    const double mean = s / static_cast<double>(n);
    e.value = mean;
    if (n > 1) {
        const double nn = static_cast<double>(n);
        const double var = std::max(0.0, (ss - s * s / nn) / (nn - 1.0));
        e.std_error = std::sqrt(var / nn);
    }
    return e;
}

std::array<double, 3> metric_values(double snr, double gamma_th)
{
    return {snr <= gamma_th ? 1.0 : 0.0,
            specfun::q_function(std::sqrt(2.0 * snr)),
            std::log2(1.0 + snr)};
}

MetricEstimates package(const Sums& total, std::uint64_t n)
{
    MetricEstimates r;
    r.op = make_estimate(total.s[0], total.ss[0], n);
    r.ber = make_estimate(total.s[1], total.ss[1], n);
    r.ac = make_estimate(total.s[2], total.ss[2], n);
    return r;
}

} // namespace

MetricEstimates estimate_metrics(const channel::SystemParams& p,
                                 const McConfig& cfg)
{
    channel::validate(p);
    const double gamma_th = std::pow(2.0, p.r_t) - 1.0;
    const bool indep = cfg.source_mode == SourceMode::independent;
    const bool exact = cfg.snr_form == SnrForm::exact;

    const Sums total = run_trials(
        cfg.n_trials, cfg.seed, cfg.workers,
        [&](rng::TrialStream& stream) {
            const channel::ChannelDraw d = channel::sample_draw(p, stream, indep);
            const double snr =
                exact ? channel::snr_exact(p, d) : channel::snr_idealized(p, d);
            return metric_values(snr, gamma_th);
        });
    return package(total, cfg.n_trials);
}

analytic::MomentPair empirical_snr_moments(const channel::SystemParams& p,
                                           const McConfig& cfg)
{
    channel::validate(p);
    const bool indep = cfg.source_mode == SourceMode::independent;
    const bool exact = cfg.snr_form == SnrForm::exact;

    const Sums total = run_trials(
        cfg.n_trials, cfg.seed, cfg.workers,
        [&](rng::TrialStream& stream) {
            const channel::ChannelDraw d = channel::sample_draw(p, stream, indep);
            const double snr =
                exact ? channel::snr_exact(p, d) : channel::snr_idealized(p, d);
            return std::array<double, 3>{snr, 0.0, 0.0};
        });

    analytic::MomentPair m;
    const double n = static_cast<double>(cfg.n_trials);
    m.mean = total.s[0] / n;
    m.variance = std::max(0.0, (total.ss[0] - total.s[0] * total.s[0] / n) /
                                   (n - 1.0));
    return m;
}

MetricEstimates estimate_from_sampler(
    const std::function<double(rng::TrialStream&)>& sample_snr,
    double gamma_th, const McConfig& cfg)
{
    const Sums total = run_trials(cfg.n_trials, cfg.seed, cfg.workers,
                                  [&](rng::TrialStream& stream) {
                                      return metric_values(sample_snr(stream),
                                                           gamma_th);
                                  });
    return package(total, cfg.n_trials);
}

std::function<double(rng::TrialStream&)> gamma_snr_sampler(double k,
                                                           double theta)
{
    return [k, theta](rng::TrialStream& stream) {
        double shape = k;
        double boost = 1.0;
        if (k < 1.0) {
            shape = k + 1.0;
            const double u = 1.0 - stream.next_unit(); // (0, 1]
            boost = std::pow(u, 1.0 / k);
        }
        // Marsaglia-Tsang squeeze for shape >= 1
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            const double u1 = 1.0 - stream.next_unit(); // (0, 1]
            const double u2 = stream.next_unit();
            const double z = std::sqrt(-2.0 * std::log(u1)) *
                             std::cos(6.2831853071795864769 * u2);
            const double t = 1.0 + c * z;
            if (t <= 0.0)
                continue;
            const double v = t * t * t;
            const double u = 1.0 - stream.next_unit();
            const double z2 = z * z;
            if (u < 1.0 - 0.0331 * z2 * z2 ||
                std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v)))
                return theta * boost * d * v;
        }
    };
}

} // namespace montecarlo
} // namespace bttn
