#pragma once

// Physical model of the intensity-modulated direct-detection link: additive
// Gaussian noise whose variance has a thermal floor plus a laser-intensity
// term growing with the squared biased amplitude.

#include <cmath>
#include <span>

#include "rinqam/pam.hpp"
#include "rinqam/rng.hpp"

namespace rinqam {

struct ChannelParams {
    double nep_w_sqrthz = 20e-12;  // receiver thermal noise equivalent power, W/sqrt(Hz)
    double bandwidth_hz = 100e9;   // noise electrical bandwidth
    double rin_db_hz = -144.0;     // laser RIN parameter; -inf disables the term
    double beta = 5.25;            // modulation bias, >= 5 keeps instantaneous power non-negative
    double eta_mw = 0.1;           // mW per amplitude unit; OMA = 10*eta for the PAM-6 alphabet
};

// Throws std::invalid_argument when a field is out of range.
void validate(const ChannelParams& params);

struct NoiseModel {
    double sigma_th_sq = 0.0;   // thermal variance, amplitude-units^2
    double sigma_rin_sq = 0.0;  // RIN variance per squared biased amplitude
};

// (NEP/eta)^2 * B, in amplitude-units^2.
double thermal_variance(const ChannelParams& params);

// 10^(RIN/10) * B.
double rin_variance(const ChannelParams& params);

NoiseModel make_noise_model(const ChannelParams& params);

// sigma^2(x) = sigma_th^2 + (x + beta)^2 sigma_rin^2 for x in the PAM-6 alphabet.
inline double symbol_variance(int amplitude, const NoiseModel& model, double beta) {
    (void)pam6_index(amplitude);
    const double biased = amplitude + beta;
    return model.sigma_th_sq + biased * biased * model.sigma_rin_sq;
}

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

// OMA in dBm refers to milliwatts; the PAM-6 span is 10 amplitude units.
double oma_dbm_to_eta(double oma_dbm);
double eta_to_oma_dbm(double eta);

// Bias solving (5 + beta) / (beta - 5) = er for a linear power ratio er > 1.
double beta_from_extinction_ratio(double er_linear);

// y_i = x_i + z_i * sigma(x_i) with two independent standard normal draws.
Observation2D channel_sample(const Point2D& x, const NoiseModel& model, double beta,
                             RandomStream& rng);

// E[||X||^2] / E[sigma^2(X1) + sigma^2(X2)], uniform over the given points.
double snr_linear(std::span<const Point2D> points, const NoiseModel& model, double beta);

// Large-OMA limit of the SNR: E[||X||^2] / (E[(X1+b)^2 + (X2+b)^2] * sigma_rin^2).
double asymptotic_snr_linear(std::span<const Point2D> points, double beta,
                             double sigma_rin_sq);

}  // namespace rinqam
