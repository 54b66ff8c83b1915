#pragma once

#include "bttn/experiments.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace bttn {
namespace config {

// Error with the config file location / field path baked into the message.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// INI-style sections of key = value lines; '#' and ';' start comments.
struct Config {
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
};

Config parse_string(const std::string& text, const std::string& origin = "<string>");
Config parse_file(const std::string& path);

// Each applier overlays recognized keys onto the given struct and throws
// ConfigError with a [section].key path for malformed or unknown keys.
void apply_params(const Config& c, channel::SystemParams& p);
void apply_mc(const Config& c, montecarlo::McConfig& mc);
void apply_sweep(const Config& c, experiments::SweepSpec& spec);

struct OutputOpts {
    std::string dir = ".";
    std::string format = "csv"; // csv | json
    bool quiet = false;
};

void apply_output(const Config& c, OutputOpts& out);

} // namespace config
} // namespace bttn
