#include "bttn/analytic.hpp"
#include "bttn/config.hpp"
#include "bttn/experiments.hpp"
#include "bttn/montecarlo.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Common {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    int workers = 0;
    bool independent_source = false;
    bool quiet = false;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--config", c.config_path, "config file (INI sections)");
    sub->add_option("--out", c.out_dir, "output directory");
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", c.seed, "Monte Carlo seed");
    sub->add_option("--trials", c.trials, "Monte Carlo trials per point");
    sub->add_option("--workers", c.workers, "worker threads (0 = all cores)");
    sub->add_flag("--independent-source", c.independent_source,
                  "draw an independent source amplitude for the RIS term");
    sub->add_flag("--quiet", c.quiet, "suppress progress output");
}

std::string json_escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

int fail_with_record(const char* kind, const std::string& message)
{
    std::cerr << "{\"error\": \"" << kind << "\", \"message\": \""
              << json_escape(message) << "\"}\n";
    return 1;
}

std::string fmt12(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

bttn::experiments::SweepSpec default_sweep()
{
    bttn::experiments::SweepSpec spec;
    spec.axis = bttn::experiments::Axis::snr_db;
    spec.axis_mode = bttn::experiments::AxisMode::transmit_db;
    spec.offset_db = 0.0;
    for (int i = 0; i <= 30; ++i)
        spec.grid.push_back(static_cast<double>(i));
    spec.overlays = {0, 10, 20, 30, 40};
    spec.metrics = {bttn::experiments::Metric::op, bttn::experiments::Metric::ber,
                    bttn::experiments::Metric::ac};
    spec.with_mc = false;
    return spec;
}

void write_points(const std::vector<bttn::experiments::CurvePoint>& points,
                  const std::string& path, const std::string& format)
{
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec); // open() reports failure
    }
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot write output file: " + path);
    if (format == "json")
        bttn::experiments::emit_json(points, os);
    else
        bttn::experiments::emit_csv(points, os);
    if (!os.good())
        throw std::runtime_error("write failed: " + path);
}

void print_metric_line(const char* name, double analytic, bool has_mc,
                       const bttn::montecarlo::McEstimate& est,
                       std::uint64_t seed)
{
    std::cout << name << " analytic=" << fmt12(analytic);
    if (has_mc)
        std::cout << " mc=" << fmt12(est.value) << " stderr=" << fmt12(est.std_error)
                  << " trials=" << est.n_trials << " seed=" << seed;
    std::cout << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"RIS-aided tag-to-tag link calculator: analytic metrics, Monte "
                 "Carlo validation, figure datasets"};
    app.require_subcommand(1);

    Common c;
    CLI::App* cmd_point =
        app.add_subcommand("point", "all three metrics for one parameter set");
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "run the sweep described by the config");
    CLI::App* cmd_figs =
        app.add_subcommand("figs", "run the four committed figure presets");
    CLI::App* cmd_validate =
        app.add_subcommand("validate", "compare analytic metrics against Monte Carlo");
    add_common(cmd_point, c);
    add_common(cmd_sweep, c);
    add_common(cmd_figs, c);
    add_common(cmd_validate, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    CLI::App* active = cmd_point->parsed()      ? cmd_point
                       : cmd_sweep->parsed()    ? cmd_sweep
                       : cmd_figs->parsed()     ? cmd_figs
                                                : cmd_validate;

    try {
        bttn::config::Config cfg;
        if (!c.config_path.empty())
            cfg = bttn::config::parse_file(c.config_path);

        bttn::channel::SystemParams base;
        bttn::config::apply_params(cfg, base);
        bttn::montecarlo::McConfig mc;
        bttn::config::apply_mc(cfg, mc);
        bttn::config::OutputOpts out;
        bttn::config::apply_output(cfg, out);

        if (active->count("--out"))
            out.dir = c.out_dir;
        if (active->count("--format"))
            out.format = c.format;
        if (active->count("--quiet"))
            out.quiet = true;
        if (active->count("--seed"))
            mc.seed = c.seed;
        if (active->count("--trials"))
            mc.n_trials = c.trials;
        if (active->count("--workers"))
            mc.workers = c.workers;
        if (c.independent_source)
            mc.source_mode = bttn::montecarlo::SourceMode::independent;

        if (active == cmd_point) {
            const bttn::analytic::GammaApprox fit =
                bttn::analytic::fit_from_params(base);
            const double op = bttn::analytic::op_for_fit(fit, base.r_t);
            const double ber = bttn::analytic::ber_for_fit(fit);
            const double ac = bttn::analytic::ac_for_fit(fit);
            const bool run_mc =
                active->count("--trials") > 0 || cfg.sections.count("mc") > 0;
            bttn::montecarlo::MetricEstimates est;
            if (run_mc)
                est = bttn::montecarlo::estimate_metrics(base, mc);
            if (!out.quiet)
                std::cout << "fit k=" << fmt12(fit.k) << " theta=" << fmt12(fit.theta)
                          << "\n";
            print_metric_line("op", op, run_mc, est.op, mc.seed);
            print_metric_line("ber", ber, run_mc, est.ber, mc.seed);
            print_metric_line("ac", ac, run_mc, est.ac, mc.seed);
        } else if (active == cmd_sweep) {
            bttn::experiments::SweepSpec spec = default_sweep();
            spec.base = base;
            spec.mc = mc;
            bttn::config::apply_sweep(cfg, spec);
            if (active->count("--trials"))
                spec.with_mc = true;
            const std::vector<bttn::experiments::CurvePoint> points =
                bttn::experiments::run_sweep(spec);
            const std::string path = out.dir + "/sweep." + out.format;
            write_points(points, path, out.format);
            if (!out.quiet)
                std::cout << "sweep: wrote " << path << " (" << points.size()
                          << " rows)\n";
        } else if (active == cmd_figs) {
            for (const char* name : {"fig2", "fig3", "fig4", "fig5"}) {
                bttn::experiments::SweepSpec spec =
                    bttn::experiments::fig_preset(name);
                if (active->count("--seed"))
                    spec.mc.seed = c.seed;
                if (active->count("--trials"))
                    spec.mc.n_trials = c.trials;
                if (active->count("--workers"))
                    spec.mc.workers = c.workers;
                if (c.independent_source)
                    spec.mc.source_mode =
                        bttn::montecarlo::SourceMode::independent;
                const std::vector<bttn::experiments::CurvePoint> points =
                    bttn::experiments::run_sweep(spec);
                const std::string path =
                    out.dir + "/" + name + "." + out.format;
                write_points(points, path, out.format);
                if (!out.quiet)
                    std::cout << name << ": wrote " << path << " ("
                              << points.size() << " rows)\n";
            }
        } else {
            const bttn::analytic::GammaApprox fit =
                bttn::analytic::fit_from_params(base);
            const double analytic[3] = {bttn::analytic::op_for_fit(fit, base.r_t),
                                        bttn::analytic::ber_for_fit(fit),
                                        bttn::analytic::ac_for_fit(fit)};
            const bttn::montecarlo::MetricEstimates est =
                bttn::montecarlo::estimate_metrics(base, mc);
            const bttn::montecarlo::McEstimate* ests[3] = {&est.op, &est.ber,
                                                           &est.ac};
            const char* names[3] = {"op", "ber", "ac"};
            for (int i = 0; i < 3; ++i) {
                const double dev = std::fabs(analytic[i] - ests[i]->value);
                std::cout << names[i] << ": analytic=" << fmt12(analytic[i])
                          << " mc=" << fmt12(ests[i]->value)
                          << " stderr=" << fmt12(ests[i]->std_error)
                          << " abs_dev=" << fmt12(dev);
                if (ests[i]->std_error > 0.0)
                    std::cout << " dev_over_stderr="
                              << fmt12(dev / ests[i]->std_error);
                std::cout << "\n";
            }
        }
    } catch (const bttn::config::ConfigError& e) {
        return fail_with_record("config", e.what());
    } catch (const std::invalid_argument& e) {
        return fail_with_record("config", e.what());
    } catch (const std::domain_error& e) {
        return fail_with_record("domain", e.what());
    } catch (const std::exception& e) {
        return fail_with_record("runtime", e.what());
    }
    return 0;
}
