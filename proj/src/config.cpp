#include "bttn/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace bttn {
namespace config {

namespace {

std::string trim(const std::string& s)
{
    const std::string ws = " \t\r\n";
    const std::size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return "";
    const std::size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ConfigError(path + ": " + what);
}

std::string key_path(const std::string& section, const std::string& key)
{
    return "[" + section + "]." + key;
}

double parse_double(const std::string& section, const std::string& key,
                    const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE ||
        !std::isfinite(x))
        fail(key_path(section, key), "expected a finite number, got '" + v + "'");
    return x;
}

long long parse_int(const std::string& section, const std::string& key,
                    const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
        fail(key_path(section, key), "expected an integer, got '" + v + "'");
    return x;
}

std::uint64_t parse_u64(const std::string& section, const std::string& key,
                        const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v[0] == '-' || end != v.c_str() + v.size() ||
        errno == ERANGE)
        fail(key_path(section, key),
             "expected a nonnegative integer, got '" + v + "'");
    return static_cast<std::uint64_t>(x);
}

bool parse_bool(const std::string& section, const std::string& key,
                const std::string& v)
{
    if (v == "true" || v == "yes" || v == "on" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "off" || v == "0")
        return false;
    fail(key_path(section, key), "expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& section,
                                    const std::string& key,
                                    const std::string& v, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (item.empty())
            fail(key_path(section, key), "empty list entry in '" + v + "'");
        out.push_back(item);
    }
    if (out.empty())
        fail(key_path(section, key), "empty list");
    return out;
}

// grid values: either "a,b,c" or "start:step:stop"
std::vector<double> parse_grid(const std::string& section,
                               const std::string& key, const std::string& v)
{
    std::vector<double> grid;
    if (v.find(':') != std::string::npos) {
        const std::vector<std::string> parts = split_list(section, key, v, ':');
        if (parts.size() != 3)
            fail(key_path(section, key),
                 "range syntax is start:step:stop, got '" + v + "'");
        const double start = parse_double(section, key, parts[0]);
        const double step = parse_double(section, key, parts[1]);
        const double stop = parse_double(section, key, parts[2]);
        if (step <= 0.0 || stop < start)
            fail(key_path(section, key),
                 "range needs step > 0 and stop >= start");
        for (int i = 0;; ++i) {
            const double x = start + i * step;
            if (x > stop + step * 1e-9)
                break;
            grid.push_back(x);
        }
    } else {
        for (const std::string& item : split_list(section, key, v, ','))
            grid.push_back(parse_double(section, key, item));
    }
    return grid;
}

} // namespace

bool Config::has(const std::string& section, const std::string& key) const
{
    const auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const
{
    const auto s = sections.find(section);
    if (s != sections.end()) {
        const auto k = s->second.find(key);
        if (k != s->second.end())
            return k->second;
    }
    throw ConfigError("missing key " + key_path(section, key));
}

Config parse_string(const std::string& text, const std::string& origin)
{
    Config cfg;
    std::string current;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';')
            continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line[0] == '[') {
            if (line.back() != ']')
                fail(where, "unterminated section header '" + line + "'");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty())
                fail(where, "empty section name");
            cfg.sections[current]; // section may stay empty
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(where, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(where, "empty key");
        if (current.empty())
            fail(where, "key '" + key + "' appears before any [section]");
        cfg.sections[current][key] = value;
    }
    return cfg;
}

Config parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

void apply_params(const Config& c, channel::SystemParams& p)
{
    const auto sec = c.sections.find("params");
    if (sec == c.sections.end())
        return;
    for (const auto& kv : sec->second) {
        const std::string& k = kv.first;
        const std::string& v = kv.second;
        if (k == "p_s_dbm")
            p.p_s_dbm = parse_double("params", k, v);
        else if (k == "noise_dbm")
            p.noise_dbm = parse_double("params", k, v);
        else if (k == "d_st")
            p.d_st = parse_double("params", k, v);
        else if (k == "d_tl")
            p.d_tl = parse_double("params", k, v);
        else if (k == "d_tr")
            p.d_tr = parse_double("params", k, v);
        else if (k == "d_rl")
            p.d_rl = parse_double("params", k, v);
        else if (k == "chi")
            p.chi = parse_double("params", k, v);
        else if (k == "n_elements") {
            const long long n = parse_int("params", k, v);
            if (n < 0)
                fail(key_path("params", k), "n_elements must be >= 0");
            p.n_elements = static_cast<int>(n);
        }
        else if (k == "alpha")
            p.alpha = parse_double("params", k, v);
        else if (k == "beta")
            p.beta = parse_double("params", k, v);
        else if (k == "delta1")
            p.delta1 = parse_double("params", k, v);
        else if (k == "delta2")
            p.delta2 = parse_double("params", k, v);
        else if (k == "lambda_t")
            p.lambda_t = parse_double("params", k, v);
        else if (k == "r_t")
            p.r_t = parse_double("params", k, v);
        else
            fail(key_path("params", k), "unknown key");
    }
}

void apply_mc(const Config& c, montecarlo::McConfig& mc)
{
    const auto sec = c.sections.find("mc");
    if (sec == c.sections.end())
        return;
    for (const auto& kv : sec->second) {
        const std::string& k = kv.first;
        const std::string& v = kv.second;
        if (k == "trials") {
            mc.n_trials = parse_u64("mc", k, v);
        } else if (k == "seed") {
            mc.seed = parse_u64("mc", k, v);
        } else if (k == "source_mode") {
            if (v == "shared")
                mc.source_mode = montecarlo::SourceMode::shared;
            else if (v == "independent")
                mc.source_mode = montecarlo::SourceMode::independent;
            else
                fail(key_path("mc", k), "expected shared|independent, got '" + v + "'");
        } else if (k == "snr_form") {
            if (v == "exact")
                mc.snr_form = montecarlo::SnrForm::exact;
            else if (v == "idealized")
                mc.snr_form = montecarlo::SnrForm::idealized;
            else
                fail(key_path("mc", k), "expected exact|idealized, got '" + v + "'");
        } else if (k == "workers") {
            const long long w = parse_int("mc", k, v);
            if (w < 0)
                fail(key_path("mc", k), "workers must be >= 0");
            mc.workers = static_cast<int>(w);
        } else {
            fail(key_path("mc", k), "unknown key");
        }
    }
}

void apply_sweep(const Config& c, experiments::SweepSpec& spec)
{
    const auto sec = c.sections.find("sweep");
    if (sec == c.sections.end())
        return;
    for (const auto& kv : sec->second) {
        const std::string& k = kv.first;
        const std::string& v = kv.second;
        if (k == "axis") {
            if (v == "snr_db")
                spec.axis = experiments::Axis::snr_db;
            else if (v == "n_elements")
                spec.axis = experiments::Axis::n_elements;
            else if (v == "d_tl")
                spec.axis = experiments::Axis::d_tl;
            else
                fail(key_path("sweep", k),
                     "expected snr_db|n_elements|d_tl, got '" + v + "'");
        } else if (k == "axis_mode") {
            if (v == "transmit_db")
                spec.axis_mode = experiments::AxisMode::transmit_db;
            else if (v == "mean_snr_db")
                spec.axis_mode = experiments::AxisMode::mean_snr_db;
            else
                fail(key_path("sweep", k),
                     "expected transmit_db|mean_snr_db, got '" + v + "'");
        } else if (k == "offset_db") {
            spec.offset_db = parse_double("sweep", k, v);
        } else if (k == "grid") {
            spec.grid = parse_grid("sweep", k, v);
        } else if (k == "overlays") {
            spec.overlays.clear();
            for (const std::string& item : split_list("sweep", k, v, ',')) {
                const long long n = parse_int("sweep", k, item);
                if (n < 0)
                    fail(key_path("sweep", k), "overlay N must be >= 0");
                spec.overlays.push_back(static_cast<int>(n));
            }
        } else if (k == "metrics") {
            spec.metrics.clear();
            for (const std::string& item : split_list("sweep", k, v, ',')) {
                if (item == "op")
                    spec.metrics.push_back(experiments::Metric::op);
                else if (item == "ber")
                    spec.metrics.push_back(experiments::Metric::ber);
                else if (item == "ac")
                    spec.metrics.push_back(experiments::Metric::ac);
                else
                    fail(key_path("sweep", k),
                         "expected op|ber|ac, got '" + item + "'");
            }
        } else if (k == "with_mc") {
            spec.with_mc = parse_bool("sweep", k, v);
        } else {
            fail(key_path("sweep", k), "unknown key");
        }
    }
}

void apply_output(const Config& c, OutputOpts& out)
{
    const auto sec = c.sections.find("output");
    if (sec == c.sections.end())
        return;
    for (const auto& kv : sec->second) {
        const std::string& k = kv.first;
        const std::string& v = kv.second;
        if (k == "dir") {
            out.dir = v;
        } else if (k == "format") {
            if (v != "csv" && v != "json")
                fail(key_path("output", k), "expected csv|json, got '" + v + "'");
            out.format = v;
        } else if (k == "quiet") {
            out.quiet = parse_bool("output", k, v);
        } else {
            fail(key_path("output", k), "unknown key");
        }
    }
}

} // namespace config
} // namespace bttn
