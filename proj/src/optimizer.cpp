#include "rinqam/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "rinqam/detection.hpp"
#include "rinqam/parallel.hpp"

namespace rinqam {

namespace {

bool removal_less(const RemovalSet& a, const RemovalSet& b) {
    for (int i = 0; i < 4; ++i) {
        if (!(a.removed[i] == b.removed[i])) return canonical_less(a.removed[i], b.removed[i]);
    }
    return false;
}

// Fixed-trial SER with draws addressed purely by (seed, chunk, trial), so every
// candidate sees the identical noise sequence.
double common_random_ser(const Constellation& c, const NoiseModel& model, double beta,
                         std::uint64_t trials, std::uint64_t seed) {
    const Detector det(c, model, beta);
    const auto& pts = c.points();
    constexpr std::uint64_t kChunk = 1ull << 16;
    std::uint64_t errors = 0;
    std::uint64_t remaining = trials;
    for (std::uint64_t chunk = 0; remaining > 0; ++chunk) {
        const std::uint64_t count = std::min(kChunk, remaining);
        RandomStream rng(seed, chunk);
        for (std::uint64_t t = 0; t < count; ++t) {
            const std::uint32_t sent = rng.uniform_index(32);
            const Observation2D y = channel_sample(pts[sent], model, beta, rng);
            if (det.detect_index(y) != static_cast<int>(sent)) ++errors;
        }
        remaining -= count;
    }
    return static_cast<double>(errors) / static_cast<double>(trials);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

SearchReport optimize_constellation(const NoiseModel& model, double beta,
                                    const SearchConfig& cfg) {
    std::vector<RemovalSet> candidates;
    if (cfg.mode == SearchMode::symmetric) {
        candidates = symmetric_removals();
    } else {
        RemovalEnumerator en;
        RemovalSet r;
        candidates.reserve(58905);
        while (en.next(r)) candidates.push_back(r);
    }

    const char* eval_tag =
        cfg.evaluator == SearchEvaluator::quadrature ? "quadrature" : "monte-carlo";

    SearchReport report;
    report.ranked.resize(candidates.size());
    parallel_for(candidates.size(), cfg.threads, [&](std::size_t i) {
        const RemovalSet& removal = candidates[i];
        try {
            const Constellation c = remove_points(removal);
            double ser = 0.0;
            if (cfg.evaluator == SearchEvaluator::quadrature) {
                ser = quadrature_ser(c, model, beta, cfg.quad, 1).ser;
            } else {
                ser = common_random_ser(c, model, beta, cfg.mc_trials, cfg.seed);
            }
            report.ranked[i] = RankedCandidate{removal, ser, eval_tag};
        } catch (const std::exception& e) {
            throw std::runtime_error("candidate " + to_string(removal) +
                                     " evaluation failed: " + e.what());
        }
    });

    std::sort(report.ranked.begin(), report.ranked.end(),
              [](const RankedCandidate& a, const RankedCandidate& b) {
                  if (a.ser != b.ser) return a.ser < b.ser;
                  return removal_less(a.removal, b.removal);
              });

    // Monte Carlo rankings get a quadrature re-check of the leaders.
    if (cfg.evaluator == SearchEvaluator::monte_carlo && cfg.recheck_top > 0) {
        const std::size_t top = std::min(cfg.recheck_top, report.ranked.size());
        parallel_for(top, cfg.threads, [&](std::size_t i) {
            RankedCandidate& rc = report.ranked[i];
            rc.ser = quadrature_ser(remove_points(rc.removal), model, beta, cfg.quad, 1).ser;
            rc.evaluator = "quadrature";
        });
        std::sort(report.ranked.begin(), report.ranked.begin() + top,
                  [](const RankedCandidate& a, const RankedCandidate& b) {
                      if (a.ser != b.ser) return a.ser < b.ser;
                      return removal_less(a.removal, b.removal);
                  });
    }

    report.config_echo =
        std::string("mode = ") + (cfg.mode == SearchMode::symmetric ? "symmetric" : "full") +
        "\nevaluator = " + eval_tag + "\nsigma_th_sq = " + format_double(model.sigma_th_sq) +
        "\nsigma_rin_sq = " + format_double(model.sigma_rin_sq) +
        "\nbeta = " + format_double(beta) +
        "\nquad_cell_size = " + format_double(cfg.quad.cell_size) +
        "\nquad_extent_sigmas = " + format_double(cfg.quad.extent_sigmas) +
        "\nmc_trials = " + std::to_string(cfg.mc_trials) +
        "\nseed = " + std::to_string(cfg.seed) + "\n";
    return report;
}

ChannelParams saturation_operating_point(const ChannelParams& base, double rin_db_hz) {
    ChannelParams params = base;
    params.rin_db_hz = rin_db_hz;
    const double srin2 = rin_variance(params);
    if (!(srin2 > 0.0))
        throw std::invalid_argument("saturation operating point requires RIN enabled");
    if (params.nep_w_sqrthz > 0.0) {
        double min_term = std::numeric_limits<double>::infinity();
        for (int a : kPam6) {
            const double biased = a + params.beta;
            const double term = biased * biased * srin2;
            if (term > 0.0) min_term = std::min(min_term, term);
        }
        params.eta_mw =
            params.nep_w_sqrthz * std::sqrt(params.bandwidth_hz / (0.01 * min_term));
    }
    validate(params);
    return params;
}

std::string search_report_csv(const SearchReport& report) {
    std::string out;
    std::size_t pos = 0;
    while (pos < report.config_echo.size()) {
        const std::size_t nl = report.config_echo.find('\n', pos);
        out += "# " + report.config_echo.substr(pos, nl - pos) + "\n";
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    out += "rank,removed_points,ser,evaluator\n";
    for (std::size_t i = 0; i < report.ranked.size(); ++i) {
        const RankedCandidate& rc = report.ranked[i];
        out += std::to_string(i + 1) + "," + to_string(rc.removal) + "," +
               format_double(rc.ser) + "," + rc.evaluator + "\n";
    }
    return out;
}

}  // namespace rinqam
