#pragma once

// OMA x RIN x constellation sweeps: SNR by direct evaluation, SER/BER by
// Monte Carlo (or by quadrature for floors too deep to sample), with CSV and
// manifest output that is byte-reproducible for a given config and seed.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rinqam/channel.hpp"
#include "rinqam/evaluation.hpp"

namespace rinqam {

struct SweepConfig {
    std::vector<double> oma_dbm;     // default -8..8 dBm, step 0.5
    std::vector<double> rin_db_hz;   // default {-147, -144, -141}
    std::vector<std::string> constellations;  // builtin names or file paths
    double nep_w_sqrthz = 20e-12;
    double bandwidth_hz = 100e9;
    std::optional<double> beta;                  // mutually exclusive with the next
    std::optional<double> extinction_ratio_db;
    StopRule stop{};
    std::uint64_t seed = 1;
};

SweepConfig default_sweep_config();

// Resolved bias: beta if set, else derived from the extinction ratio, else 5.25.
double effective_beta(const SweepConfig& cfg);

struct SweepRow {
    double oma_dbm = 0.0;
    double rin_db_hz = 0.0;
    std::string constellation;
    double snr_db = 0.0;
    double ser = 0.0;
    double ber = 0.0;
    double ser_ci95 = 0.0;
    double ber_ci95 = 0.0;
    std::uint64_t trials = 0;  // 0 marks a quadrature-only case
    std::uint64_t seed = 0;
};

struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(std::string key, std::string value) {
        entries.emplace_back(std::move(key), std::move(value));
    }
};

struct SweepResult {
    std::vector<SweepRow> rows;
    RunManifest manifest;
};

// One row per (constellation, rin, oma) in that sort order. Cases whose
// expected BER falls below 1e-7 are evaluated by quadrature and flagged in the
// manifest; per-case failures are recorded there too and the sweep continues.
SweepResult run_sweep(const SweepConfig& cfg, int threads = 0);

// CSV with the fixed header; floats carry 9 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

// Flat "key = value" text.
std::string manifest_text(const RunManifest& manifest);

// Writes the CSV at `csv_path` and the manifest as manifest.txt next to it;
// bytes depend only on the rows and manifest. Rejects an empty row list.
void emit_csv(const std::vector<SweepRow>& rows, const RunManifest& manifest,
              const std::string& csv_path);

// One-parameter fit of the RIN-variance scale (via the bandwidth) such that
// the quadrature SER/5 of the optimized constellation at the saturation point
// of `rin_db_hz` matches `target_ber_floor` within 2%.
ChannelParams calibrate_floor(const ChannelParams& base, double rin_db_hz,
                              double target_ber_floor, const QuadratureSpec& spec = {},
                              int threads = 0);

std::string format_g9(double v);

}  // namespace rinqam
