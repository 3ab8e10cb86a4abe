#pragma once

// Error-rate estimation: chunked Monte Carlo with reproducible substreams, and
// a deterministic quadrature evaluation of the symbol error rate used as the
// noise-free comparator for candidate ranking and cross-validation.

#include <cstdint>

#include "rinqam/channel.hpp"
#include "rinqam/constellation.hpp"
#include "rinqam/detection.hpp"

namespace rinqam {

struct StopRule {
    std::uint64_t min_symbol_errors = 100;
    std::uint64_t max_trials = 1000000000;
};

struct ErrorEstimate {
    double ser = 0.0;
    double ber = 0.0;
    std::uint64_t symbol_trials = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
    double ser_ci95 = 0.0;  // Wilson 95% half-widths
    double ber_ci95 = 0.0;
    std::uint64_t seed = 0;
    bool upper_bound_only = false;  // max_trials reached with zero errors
};

// Draws uniform symbols, pushes them through the channel and the ML detector,
// and counts symbol and bit errors until the stop rule is met. Trials run in
// fixed-size chunks with per-chunk substreams and the stop rule is applied at
// chunk granularity, so results are bit-identical for any worker count.
ErrorEstimate monte_carlo(const Detector& detector, const StopRule& stop, std::uint64_t seed,
                          int threads = 0);

// 95% Wilson score interval half-width for k successes in n trials.
double wilson_halfwidth95(std::uint64_t k, std::uint64_t n);

struct QuadratureSpec {
    double cell_size = 0.05;     // grid spacing, amplitude units
    double extent_sigmas = 8.0;  // grid reach past the outer levels, in max-sigma units
    bool refine = true;          // re-evaluate at half spacing and report that value
};

struct QuadratureResult {
    double ser = 0.0;
    double error_bound = 0.0;  // difference between the last two refinement levels
    bool converged = true;     // steps shrinking, or the last one immaterial
};

// Deterministic SER: decision regions are resolved at cell centers, per-cell
// probability mass comes from products of Gaussian CDF differences, and mass
// outside the grid counts as error. Requires every level variance > 0.
QuadratureResult quadrature_ser(const Constellation& c, const NoiseModel& model, double beta,
                                const QuadratureSpec& spec = {}, int threads = 0);

// ber/ser of an estimate; rejects ser == 0.
double ber_over_ser_ratio(const ErrorEstimate& estimate);

}  // namespace rinqam
