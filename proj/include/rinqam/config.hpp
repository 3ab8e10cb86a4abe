#pragma once

// Flat "key = value" config files for the sweep surface, plus the schema table
// the CLI uses to expose one override flag per key.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rinqam/sweep.hpp"

namespace rinqam {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigKeyInfo {
    std::string key;
    std::string help;
};

// Every key accepted by the parser, in canonical order.
const std::vector<ConfigKeyInfo>& sweep_config_keys();

// Applies one key/value; throws ConfigError for unknown keys or bad values.
void apply_config_value(SweepConfig& cfg, const std::string& key, const std::string& value);

// Parses a config file body on top of the defaults. Lines are `key = value`;
// blank lines and lines starting with '#' are ignored.
SweepConfig parse_sweep_config(std::string_view text);

// Consistency checks shared by file and flag input (non-empty grids,
// beta/extinction exclusivity, positive stop limits).
void validate_sweep_config(const SweepConfig& cfg);

// Numeric grids: either "start:step:stop" (inclusive) or "v1,v2,...".
std::vector<double> parse_grid(const std::string& text);

double parse_double_value(const std::string& text);
std::uint64_t parse_u64_value(const std::string& text);

}  // namespace rinqam
