#pragma once

#include "bttn/analytic.hpp"
#include "bttn/channel.hpp"
#include "bttn/rng.hpp"

#include <cstdint>
#include <functional>

namespace bttn {
namespace montecarlo {

enum class SourceMode { shared, independent };
enum class SnrForm { exact, idealized };

struct McConfig {
    std::uint64_t n_trials = 1000000;
    std::uint64_t seed = 1;
    SourceMode source_mode = SourceMode::shared;
    SnrForm snr_form = SnrForm::exact;
    int workers = 0; // 0 = hardware concurrency
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_trials = 0;
};

struct MetricEstimates {
    McEstimate op;
    McEstimate ber;
    McEstimate ac;
};

// One channel simulation per trial feeding all three estimators: outage
// indicator, mean conditional error probability, mean log capacity.
// Bit-identical for fixed (seed, n_trials) regardless of worker count.
MetricEstimates estimate_metrics(const channel::SystemParams& p,
                                 const McConfig& cfg);

// Sample mean and variance of the instantaneous SNR.
analytic::MomentPair empirical_snr_moments(const channel::SystemParams& p,
                                           const McConfig& cfg);

// Same estimators driven by an arbitrary per-trial SNR sampler; used to
// validate the estimators against a known distribution.
MetricEstimates estimate_from_sampler(
    const std::function<double(rng::TrialStream&)>& sample_snr,
    double gamma_th, const McConfig& cfg);

// Deterministic gamma-distributed sampler factory (shape k, scale theta)
// for the validation path.
std::function<double(rng::TrialStream&)> gamma_snr_sampler(double k,
                                                           double theta);

} // namespace montecarlo
} // namespace bttn
