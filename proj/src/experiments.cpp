#include "bttn/experiments.hpp"

#include "bttn/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace bttn {
namespace experiments {

namespace {

const double PI = 3.14159265358979323846;

std::string fmt12(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string overlay_label_for(int n)
{
    if (n == 0)
        return "without_ris";
    return "N=" + std::to_string(n);
}

// Solves A*g0 + B*sqrt(g0) = target for the transmit SNR g0, where A and B
// are the direct and RIS coefficients of the fitted mean at unit transmit
// SNR.  Used by the mean_snr_db axis mode.
double solve_gamma0_for_mean(const channel::SystemParams& p, double target_mean)
{
    const double path_x = 1.0 / (std::pow(p.d_st, p.chi) * std::pow(p.d_tl, p.chi));
    const double path_y = 1.0 / (std::pow(p.d_st, p.chi) * std::pow(p.d_tr, p.chi) *
                                 std::pow(p.d_rl, p.chi));
    const double a = path_x * p.alpha * p.beta;
    double b = 0.0;
    if (p.n_elements > 0)
        b = p.alpha * p.n_elements * PI *
            std::sqrt(path_y * p.delta1 * p.delta2) / 4.0;
    const double root = (-b + std::sqrt(b * b + 4.0 * a * target_mean)) / (2.0 * a);
    return root * root;
}

channel::SystemParams point_params(const SweepSpec& spec, int overlay_n,
                                   double axis_value)
{
    channel::SystemParams p = spec.base;
    switch (spec.axis) {
    case Axis::snr_db: {
        p.n_elements = overlay_n;
        const double target_db = axis_value + spec.offset_db;
        if (spec.axis_mode == AxisMode::transmit_db) {
            p.p_s_dbm = p.noise_dbm + target_db;
        } else {
            const double target_mean = std::pow(10.0, target_db / 10.0);
            const double g0 = solve_gamma0_for_mean(p, target_mean);
            p.p_s_dbm = p.noise_dbm + 10.0 * std::log10(g0);
        }
        break;
    }
    case Axis::n_elements:
        p.n_elements = static_cast<int>(std::llround(axis_value));
        break;
    case Axis::d_tl:
        p.n_elements = overlay_n;
        p.d_tl = axis_value;
        break;
    }
    return p;
}

double analytic_metric(const channel::SystemParams& p, Metric m)
{
    const analytic::GammaApprox fit = analytic::fit_from_params(p);
    switch (m) {
    case Metric::op:
        return analytic::op_for_fit(fit, p.r_t);
    case Metric::ber:
        return analytic::ber_for_fit(fit);
    case Metric::ac:
        return analytic::ac_for_fit(fit);
    }
    return 0.0;
}

void write_escaped(std::ostream& os, const std::string& s)
{
    for (char ch : s) {
        if (ch == '"' || ch == '\\')
            os << '\\';
        os << ch;
    }
}

} // namespace

const char* axis_name(Axis a)
{
    switch (a) {
    case Axis::snr_db:
        return "snr_db";
    case Axis::n_elements:
        return "n_elements";
    case Axis::d_tl:
        return "d_tl";
    }
    return "";
}

const char* metric_name(Metric m)
{
    switch (m) {
    case Metric::op:
        return "op";
    case Metric::ber:
        return "ber";
    case Metric::ac:
        return "ac";
    }
    return "";
}

void validate(const SweepSpec& spec)
{
    if (spec.grid.empty())
        throw std::invalid_argument("SweepSpec.grid: must be nonempty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1]))
            throw std::invalid_argument(
                "SweepSpec.grid: values must be strictly increasing");
    if (spec.metrics.empty())
        throw std::invalid_argument("SweepSpec.metrics: must be nonempty");

    if (spec.axis == Axis::n_elements) {
        if (!spec.overlays.empty())
            throw std::invalid_argument(
                "SweepSpec.overlays: must be empty when axis is n_elements");
        for (double g : spec.grid) {
            const double r = std::llround(g);
            if (g < 0.0 || std::fabs(g - r) > 1e-9)
                throw std::invalid_argument(
                    "SweepSpec.grid: n_elements values must be nonnegative integers");
        }
    } else {
        if (spec.overlays.empty())
            throw std::invalid_argument("SweepSpec.overlays: must be nonempty");
        for (int n : spec.overlays)
            if (n < 0)
                throw std::invalid_argument("SweepSpec.overlays: N must be >= 0");
    }
    if (spec.axis == Axis::d_tl)
        for (double g : spec.grid)
            if (!(g > 0.0))
                throw std::invalid_argument("SweepSpec.grid: d_tl values must be > 0");

    channel::validate(spec.base);
    if (spec.with_mc && spec.mc.n_trials < 2)
        throw std::invalid_argument("SweepSpec.mc.n_trials: need at least 2 trials");
    if (spec.with_mc && spec.mc.workers < 0)
        throw std::invalid_argument("SweepSpec.mc.workers: must be >= 0");
}

std::vector<CurvePoint> run_sweep(const SweepSpec& spec)
{
    validate(spec);

    // one synthetic overlay for the n_elements axis
    std::vector<int> overlays = spec.overlays;
    std::vector<std::string> labels;
    if (spec.axis == Axis::n_elements) {
        overlays = {spec.base.n_elements};
        labels = {"n_sweep"};
    } else {
        for (int n : overlays)
            labels.push_back(overlay_label_for(n));
    }

    // MC runs once per grid point and feeds every requested metric
    std::vector<std::vector<std::optional<montecarlo::MetricEstimates>>> mc_cache(
        overlays.size(),
        std::vector<std::optional<montecarlo::MetricEstimates>>(spec.grid.size()));

    std::vector<CurvePoint> points;
    points.reserve(spec.metrics.size() * overlays.size() * spec.grid.size());

    for (Metric m : spec.metrics) {
        for (std::size_t oi = 0; oi < overlays.size(); ++oi) {
            for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
                const channel::SystemParams p =
                    point_params(spec, overlays[oi], spec.grid[gi]);
                CurvePoint cp;
                cp.axis = axis_name(spec.axis);
                cp.axis_value = spec.grid[gi];
                cp.overlay_label = labels[oi];
                cp.metric = m;
                cp.analytic = analytic_metric(p, m);
                if (spec.with_mc) {
                    auto& slot = mc_cache[oi][gi];
                    if (!slot)
                        slot = montecarlo::estimate_metrics(p, spec.mc);
                    const montecarlo::McEstimate& est =
                        m == Metric::op    ? slot->op
                        : m == Metric::ber ? slot->ber
                                           : slot->ac;
                    cp.has_mc = true;
                    cp.mc_value = est.value;
                    cp.mc_stderr = est.std_error;
                    cp.n_trials = est.n_trials;
                    cp.seed = spec.mc.seed;
                }
                points.push_back(cp);
            }
        }
    }
    return points;
}

void emit_csv(const std::vector<CurvePoint>& points, std::ostream& os)
{
    os << "axis_name,axis_value,overlay_label,metric,analytic,"
          "mc_value,mc_stderr,n_trials,seed\n";
    for (const CurvePoint& cp : points) {
        os << cp.axis << ',' << fmt12(cp.axis_value) << ',' << cp.overlay_label
           << ',' << metric_name(cp.metric) << ',' << fmt12(cp.analytic) << ',';
        if (cp.has_mc)
            os << fmt12(cp.mc_value) << ',' << fmt12(cp.mc_stderr) << ','
               << cp.n_trials << ',' << cp.seed;
        else
            os << ",,,";
        os << '\n';
    }
}

void emit_json(const std::vector<CurvePoint>& points, std::ostream& os)
{
    os << "[\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CurvePoint& cp = points[i];
        os << "  {\"axis_name\": \"";
        write_escaped(os, cp.axis);
        os << "\", \"axis_value\": " << fmt12(cp.axis_value)
           << ", \"overlay_label\": \"";
        write_escaped(os, cp.overlay_label);
        os << "\", \"metric\": \"" << metric_name(cp.metric)
           << "\", \"analytic\": " << fmt12(cp.analytic);
        if (cp.has_mc)
            os << ", \"mc_value\": " << fmt12(cp.mc_value)
               << ", \"mc_stderr\": " << fmt12(cp.mc_stderr)
               << ", \"n_trials\": " << cp.n_trials << ", \"seed\": " << cp.seed;
        else
            os << ", \"mc_value\": null, \"mc_stderr\": null, "
                  "\"n_trials\": null, \"seed\": null";
        os << '}' << (i + 1 < points.size() ? "," : "") << '\n';
    }
    os << "]\n";
}

SweepSpec fig_preset(const std::string& name)
{
    SweepSpec spec;
    spec.axis = Axis::snr_db;
    spec.axis_mode = AxisMode::transmit_db;
    spec.overlays = {0, 10, 20, 30, 40};
    spec.grid.clear();
    for (int i = 0; i <= 30; ++i)
        spec.grid.push_back(static_cast<double>(i));
    spec.with_mc = true;
    spec.mc.n_trials = 100000;

    if (name == "fig2") {
        spec.offset_db = -5.0;
        spec.metrics = {Metric::op};
    } else if (name == "fig3") {
        spec.offset_db = -5.0;
        spec.metrics = {Metric::ber};
    } else if (name == "fig4") {
        spec.offset_db = 22.0;
        spec.metrics = {Metric::ac};
    } else if (name == "fig5") {
        spec.axis = Axis::d_tl;
        spec.offset_db = 0.0;
        spec.metrics = {Metric::ac};
        spec.grid.clear();
        for (int i = 0; i <= 12; ++i)
            spec.grid.push_back(1.0 + 0.25 * i);
        spec.base.p_s_dbm = -30.0; // transmit SNR 20 dB over the -50 dBm noise
        spec.base.d_rl = 3.0;
        spec.with_mc = false;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return spec;
}

} // namespace experiments
} // namespace bttn
