#pragma once

// Exhaustive SER minimization over 32-point subsets of the 6x6 grid, either
// restricted to the 345 swap-symmetric removal sets or over all 58905.

#include <cstdint>
#include <string>
#include <vector>

#include "rinqam/channel.hpp"
#include "rinqam/constellation.hpp"
#include "rinqam/evaluation.hpp"

namespace rinqam {

enum class SearchMode { symmetric, full };
enum class SearchEvaluator { quadrature, monte_carlo };

struct SearchConfig {
    SearchMode mode = SearchMode::symmetric;
    SearchEvaluator evaluator = SearchEvaluator::quadrature;
    QuadratureSpec quad{};
    std::uint64_t mc_trials = 1000000;  // per candidate; common random numbers
    std::uint64_t seed = 1;
    std::size_t recheck_top = 10;  // quadrature re-check after a Monte Carlo ranking
    int threads = 0;
};

struct RankedCandidate {
    RemovalSet removal;
    double ser = 0.0;
    std::string evaluator;
};

struct SearchReport {
    std::vector<RankedCandidate> ranked;  // ascending by (ser, removal)
    std::string config_echo;              // "key = value" lines
    const RankedCandidate& best() const { return ranked.front(); }
};

// Evaluates every candidate removal set and returns the full ranking. The
// Monte Carlo evaluator reuses identical noise draws across candidates so
// rankings compare like with like, then re-checks the leaders by quadrature.
SearchReport optimize_constellation(const NoiseModel& model, double beta,
                                    const SearchConfig& cfg = {});

// Channel parameters pushed into the RIN-dominated regime: eta is raised until
// the thermal variance is 1% of the smallest nonzero per-level RIN variance.
ChannelParams saturation_operating_point(const ChannelParams& base, double rin_db_hz);

// CSV: config echo as '#' comments, then rank,removed_points,ser,evaluator.
std::string search_report_csv(const SearchReport& report);

}  // namespace rinqam
