#include "rinqam/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rinqam/parallel.hpp"

namespace rinqam {

namespace {

constexpr std::uint64_t kChunkTrials = 1ull << 16;

struct ChunkCounts {
    std::uint64_t trials = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
};

ChunkCounts run_chunk(const Detector& det, std::uint64_t seed, std::uint64_t chunk,
                      std::uint64_t trials) {
    RandomStream rng(seed, chunk);
    const auto& pts = det.constellation().points();
    ChunkCounts counts;
    counts.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint32_t sent = rng.uniform_index(32);
        const Observation2D y = channel_sample(pts[sent], det.noise(), det.beta(), rng);
        const int got = det.detect_index(y);
        if (got != static_cast<int>(sent)) {
            ++counts.symbol_errors;
            counts.bit_errors +=
                static_cast<std::uint64_t>(hamming(det.code_at(sent), det.code_at(got)));
        }
    }
    return counts;
}

}  // namespace

double wilson_halfwidth95(std::uint64_t k, std::uint64_t n) {
    if (n == 0) return 0.0;
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2n = z * z / nn;
    return (z / (1.0 + z2n)) * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
}

ErrorEstimate monte_carlo(const Detector& detector, const StopRule& stop, std::uint64_t seed,
                          int threads) {
    if (stop.min_symbol_errors < 1)
        throw std::invalid_argument("min_symbol_errors must be >= 1");
    if (stop.max_trials < 1) throw std::invalid_argument("max_trials must be >= 1");
    if (!detector.labeling())
        throw std::invalid_argument("monte_carlo needs a labeled detector");

    const std::uint64_t n_chunks = (stop.max_trials + kChunkTrials - 1) / kChunkTrials;
    const auto chunk_trials = [&](std::uint64_t c) {
        return std::min(kChunkTrials, stop.max_trials - c * kChunkTrials);
    };

    // Chunks are evaluated in windows; the stop rule scans the per-chunk
    // counts in index order, so the set of counted chunks is the same for any
    // window size or worker count.
    std::uint64_t trials = 0, symbol_errors = 0, bit_errors = 0;
    std::uint64_t cursor = 0;
    std::uint64_t window = 16;
    bool stopped = false;
    while (!stopped && cursor < n_chunks) {
        const std::uint64_t count = std::min(window, n_chunks - cursor);
        std::vector<ChunkCounts> results(count);
        parallel_for(count, threads, [&](std::size_t i) {
            const std::uint64_t c = cursor + i;
            results[i] = run_chunk(detector, seed, c, chunk_trials(c));
        });
        for (const ChunkCounts& r : results) {
            trials += r.trials;
            symbol_errors += r.symbol_errors;
            bit_errors += r.bit_errors;
            if (symbol_errors >= stop.min_symbol_errors) {
                stopped = true;
                break;
            }
        }
        cursor += count;
        window = std::min<std::uint64_t>(window * 2, 1024);
    }

    ErrorEstimate est;
    est.symbol_trials = trials;
    est.symbol_errors = symbol_errors;
    est.bit_errors = bit_errors;
    est.ser = static_cast<double>(symbol_errors) / static_cast<double>(trials);
    est.ber = static_cast<double>(bit_errors) / (5.0 * static_cast<double>(trials));
    est.ser_ci95 = wilson_halfwidth95(symbol_errors, trials);
    est.ber_ci95 = wilson_halfwidth95(bit_errors, 5 * trials);
    est.seed = seed;
    est.upper_bound_only = (symbol_errors == 0);
    return est;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); }

// Single SER evaluation on a fixed grid. Column/row masses are exact Gaussian
// CDF differences; only the assignment of whole cells to decision regions
// discretizes, which the caller bounds by comparing grid spacings.
double quad_eval(const Constellation& c, const std::array<double, 6>& s2, double h, double k,
                 int threads) {
    std::array<double, 6> sigma{}, ln_s2{};
    double smax = 0.0;
    for (int i = 0; i < 6; ++i) {
        sigma[i] = std::sqrt(s2[i]);
        ln_s2[i] = std::log(s2[i]);
        smax = std::max(smax, sigma[i]);
    }
    const double lo = -5.0 - k * smax;
    const double hi = 5.0 + k * smax;
    const int n = static_cast<int>(std::ceil((hi - lo) / h));
    if (n > 8192)
        throw std::invalid_argument(
            "quadrature grid too large; increase cell_size or reduce extent_sigmas");

    // Per-amplitude cell masses and cell-center decision costs, both grids shared
    // by the two dimensions.
    std::vector<double> mass(6 * n), cost(6 * n);
    std::array<double, 6> total{};
    for (int a = 0; a < 6; ++a) {
        const double mu = kPam6[a];
        double prev = normal_cdf((lo - mu) / sigma[a]);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double edge = lo + (i + 1) * h;
            const double cdf = normal_cdf((edge - mu) / sigma[a]);
            const double m = cdf - prev;
            prev = cdf;
            mass[a * n + i] = m;
            sum += m;
            const double r = lo + (i + 0.5) * h - mu;
            cost[a * n + i] = ln_s2[a] + r * r / s2[a];
        }
        total[a] = sum;
    }

    const int np = static_cast<int>(c.size());
    std::array<int, 32> a1{}, a2{};
    for (int p = 0; p < np; ++p) {
        a1[p] = pam6_index(c.points()[p].x1);
        a2[p] = pam6_index(c.points()[p].x2);
    }

    // err_col[i] = sum over rows j and symbols p not winning cell (i,j) of the
    // cell mass under p; the final reduction runs in column order.
    std::vector<double> err_col(n, 0.0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t col) {
        const int i = static_cast<int>(col);
        double f1[32], rowsum[32];
        for (int p = 0; p < np; ++p) {
            f1[p] = cost[a1[p] * n + i];
            rowsum[p] = 0.0;
        }
        for (int j = 0; j < n; ++j) {
            int w = 0;
            double best = f1[0] + cost[a2[0] * n + j];
            for (int p = 1; p < np; ++p) {
                const double s = f1[p] + cost[a2[p] * n + j];
                if (s < best) {
                    best = s;
                    w = p;
                }
            }
            for (int p = 0; p < np; ++p) rowsum[p] += mass[a2[p] * n + j];
            rowsum[w] -= mass[a2[w] * n + j];
        }
        double e = 0.0;
        for (int p = 0; p < np; ++p) e += mass[a1[p] * n + i] * rowsum[p];
        err_col[col] = e;
    });

    double err = 0.0;
    for (int i = 0; i < n; ++i) err += err_col[i];
    for (int p = 0; p < np; ++p) err += 1.0 - total[a1[p]] * total[a2[p]];
    return err / static_cast<double>(np);
}

}  // namespace

QuadratureResult quadrature_ser(const Constellation& c, const NoiseModel& model, double beta,
                                const QuadratureSpec& spec, int threads) {
    if (!(spec.cell_size > 0.0)) throw std::invalid_argument("cell_size must be > 0");
    if (!(spec.extent_sigmas >= 6.0)) throw std::invalid_argument("extent_sigmas must be >= 6");
    std::array<double, 6> s2{};
    for (int i = 0; i < 6; ++i) {
        s2[i] = symbol_variance(kPam6[i], model, beta);
        if (!(s2[i] > 0.0))
            throw std::invalid_argument(
                "level " + std::to_string(kPam6[i]) +
                " has zero noise variance; quadrature is undefined there");
    }

    const double coarse2 = quad_eval(c, s2, 2.0 * spec.cell_size, spec.extent_sigmas, threads);
    const double coarse = quad_eval(c, s2, spec.cell_size, spec.extent_sigmas, threads);
    QuadratureResult result;
    if (spec.refine) {
        const double fine =
            quad_eval(c, s2, 0.5 * spec.cell_size, spec.extent_sigmas, threads);
        result.ser = fine;
        result.error_bound = std::abs(coarse - fine);
        const double prev = std::abs(coarse2 - coarse);
        // Steps may oscillate once the value is resolved; only a growing step
        // that is also a material fraction of the estimate signals divergence.
        result.converged =
            result.error_bound <= prev || result.error_bound <= 0.02 * std::abs(fine);
    } else {
        result.ser = coarse;
        result.error_bound = std::abs(coarse2 - coarse);
        result.converged = true;
    }
    return result;
}

double ber_over_ser_ratio(const ErrorEstimate& estimate) {
    if (!(estimate.ser > 0.0))
        throw std::invalid_argument("ber/ser ratio undefined at zero SER");
    return estimate.ber / estimate.ser;
}

}  // namespace rinqam
