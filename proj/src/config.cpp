#include "rinqam/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace rinqam {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        parts.push_back(trim(text.substr(pos, next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return parts;
}

}  // namespace

double parse_double_value(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty numeric value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw ConfigError("bad numeric value '" + t + "'");
    return v;
}

std::uint64_t parse_u64_value(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty() || t[0] == '-') throw ConfigError("bad count value '" + t + "'");
    char* end = nullptr;
    const double asF = std::strtod(t.c_str(), &end);  // allow 1e6 style counts
    if (end != t.c_str() + t.size() || asF < 0 || asF > 1.8e19 || asF != std::floor(asF))
        throw ConfigError("bad count value '" + t + "'");
    return static_cast<std::uint64_t>(asF);
}

std::vector<double> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw ConfigError("grid must be start:step:stop");
        const double start = parse_double_value(parts[0]);
        const double step = parse_double_value(parts[1]);
        const double stop = parse_double_value(parts[2]);
        if (!(step > 0.0)) throw ConfigError("grid step must be > 0");
        if (stop < start) throw ConfigError("grid stop must be >= start");
        std::vector<double> grid;
        const double count = std::floor((stop - start) / step + 1e-9);
        for (int i = 0; i <= static_cast<int>(count); ++i) grid.push_back(start + i * step);
        return grid;
    }
    std::vector<double> values;
    for (const std::string& part : split(t, ',')) values.push_back(parse_double_value(part));
    return values;
}

const std::vector<ConfigKeyInfo>& sweep_config_keys() {
    static const std::vector<ConfigKeyInfo> keys{
        {"oma_dbm", "OMA grid in dBm: start:step:stop or v1,v2,..."},
        {"rin_db_hz", "RIN values in dB/Hz: v1,v2,..."},
        {"constellations", "comma list of cross|reference|optimized or file paths"},
        {"nep_w_sqrthz", "receiver noise equivalent power, W/sqrt(Hz)"},
        {"bandwidth_hz", "noise electrical bandwidth, Hz"},
        {"beta", "modulation bias (>= 5); exclusive with extinction_ratio_db"},
        {"extinction_ratio_db", "modulator extinction ratio in dB; exclusive with beta"},
        {"min_symbol_errors", "Monte Carlo stop: symbol errors to collect"},
        {"max_trials", "Monte Carlo stop: trial budget"},
        {"seed", "64-bit master seed"},
    };
    return keys;
}

void apply_config_value(SweepConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "oma_dbm") {
        cfg.oma_dbm = parse_grid(value);
    } else if (key == "rin_db_hz") {
        cfg.rin_db_hz = parse_grid(value);
    } else if (key == "constellations") {
        cfg.constellations.clear();
        std::size_t pos = 0;
        const std::string t = trim(value);
        while (pos <= t.size()) {
            const auto next = t.find(',', pos);
            const std::string item = trim(t.substr(pos, next - pos));
            if (!item.empty()) cfg.constellations.push_back(item);
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (cfg.constellations.empty()) throw ConfigError("constellations list is empty");
    } else if (key == "nep_w_sqrthz") {
        cfg.nep_w_sqrthz = parse_double_value(value);
    } else if (key == "bandwidth_hz") {
        cfg.bandwidth_hz = parse_double_value(value);
    } else if (key == "beta") {
        cfg.beta = parse_double_value(value);
    } else if (key == "extinction_ratio_db") {
        cfg.extinction_ratio_db = parse_double_value(value);
    } else if (key == "min_symbol_errors") {
        cfg.stop.min_symbol_errors = parse_u64_value(value);
    } else if (key == "max_trials") {
        cfg.stop.max_trials = parse_u64_value(value);
    } else if (key == "seed") {
        cfg.seed = parse_u64_value(value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

SweepConfig parse_sweep_config(std::string_view text) {
    SweepConfig cfg = default_sweep_config();
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string line =
            trim(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
        ++lineno;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_config_value(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

void validate_sweep_config(const SweepConfig& cfg) {
    if (cfg.oma_dbm.empty()) throw ConfigError("oma_dbm grid is empty");
    if (cfg.rin_db_hz.empty()) throw ConfigError("rin_db_hz list is empty");
    if (cfg.constellations.empty()) throw ConfigError("constellations list is empty");
    if (cfg.beta && cfg.extinction_ratio_db)
        throw ConfigError("set either beta or extinction_ratio_db, not both");
    if (cfg.stop.min_symbol_errors < 1) throw ConfigError("min_symbol_errors must be >= 1");
    if (cfg.stop.max_trials < 1) throw ConfigError("max_trials must be >= 1");
    if (!(cfg.nep_w_sqrthz >= 0.0)) throw ConfigError("nep_w_sqrthz must be >= 0");
    if (!(cfg.bandwidth_hz > 0.0)) throw ConfigError("bandwidth_hz must be > 0");
    const double beta = effective_beta(cfg);
    if (!(beta >= 5.0)) throw ConfigError("beta must be >= 5");
}

}  // namespace rinqam
