#include "rinqam/channel.hpp"

#include <stdexcept>

namespace rinqam {

void validate(const ChannelParams& params) {
    if (!(params.beta >= 5.0))
        throw std::invalid_argument("beta must be >= 5 (non-negative optical power)");
    if (!(params.nep_w_sqrthz >= 0.0)) throw std::invalid_argument("nep must be >= 0");
    if (!(params.bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    if (!(params.eta_mw > 0.0)) throw std::invalid_argument("eta must be > 0");
}

double thermal_variance(const ChannelParams& params) {
    const double amp = params.nep_w_sqrthz / params.eta_mw;
    return amp * amp * params.bandwidth_hz;
}

double rin_variance(const ChannelParams& params) {
    if (std::isinf(params.rin_db_hz) && params.rin_db_hz < 0.0) return 0.0;
    return from_db(params.rin_db_hz) * params.bandwidth_hz;
}

NoiseModel make_noise_model(const ChannelParams& params) {
    validate(params);
    return NoiseModel{thermal_variance(params), rin_variance(params)};
}

double oma_dbm_to_eta(double oma_dbm) { return from_db(oma_dbm) / 10.0; }

double eta_to_oma_dbm(double eta) { return to_db(10.0 * eta); }

double beta_from_extinction_ratio(double er_linear) {
    if (!(er_linear > 1.0)) throw std::invalid_argument("extinction ratio must be > 1");
    if (std::isinf(er_linear)) return 5.0;
    return 5.0 * (er_linear + 1.0) / (er_linear - 1.0);
}

Observation2D channel_sample(const Point2D& x, const NoiseModel& model, double beta,
                             RandomStream& rng) {
    const auto [z1, z2] = rng.normal_pair();
    return Observation2D{x.x1 + z1 * std::sqrt(symbol_variance(x.x1, model, beta)),
                         x.x2 + z2 * std::sqrt(symbol_variance(x.x2, model, beta))};
}

double snr_linear(std::span<const Point2D> points, const NoiseModel& model, double beta) {
    if (points.empty()) throw std::invalid_argument("snr of an empty constellation");
    double signal = 0.0;
    double noise = 0.0;
    for (const Point2D& p : points) {
        signal += static_cast<double>(p.x1) * p.x1 + static_cast<double>(p.x2) * p.x2;
        noise += symbol_variance(p.x1, model, beta) + symbol_variance(p.x2, model, beta);
    }
    return signal / noise;
}

double asymptotic_snr_linear(std::span<const Point2D> points, double beta,
                             double sigma_rin_sq) {
    if (points.empty()) throw std::invalid_argument("snr of an empty constellation");
    if (!(sigma_rin_sq > 0.0))
        throw std::invalid_argument("asymptotic SNR requires sigma_rin_sq > 0");
    double signal = 0.0;
    double biased = 0.0;
    for (const Point2D& p : points) {
        signal += static_cast<double>(p.x1) * p.x1 + static_cast<double>(p.x2) * p.x2;
        const double b1 = p.x1 + beta;
        const double b2 = p.x2 + beta;
        biased += b1 * b1 + b2 * b2;
    }
    return signal / (biased * sigma_rin_sq);
}

}  // namespace rinqam
