#pragma once

// Joint 2D maximum-likelihood detection under symbol-dependent Gaussian noise.
// The 32-point set is not a product set, so per-dimension slicing is not
// admissible; every decision compares the joint likelihood of all 32 points.

#include <array>
#include <cstdint>
#include <optional>

#include "rinqam/channel.hpp"
#include "rinqam/constellation.hpp"
#include "rinqam/labeling.hpp"

namespace rinqam {

class Detector {
public:
    Detector(Constellation c, NoiseModel model, double beta);
    Detector(Constellation c, Labeling labeling, NoiseModel model, double beta);

    // -(1/2) sum_i [ln s2(x_i) + (y_i - x_i)^2 / s2(x_i)], terms independent of
    // x dropped. A zero-variance dimension contributes -inf unless y_i equals
    // x_i exactly, in which case the result is the +inf sentinel.
    double log_likelihood(const Observation2D& y, const Point2D& x) const;

    // Likelihood argmax; ties resolved toward the canonically first point.
    int detect_index(const Observation2D& y) const;
    Point2D detect(const Observation2D& y) const;

    // Label of a constellation point; requires a labeled detector.
    std::uint8_t demap(const Point2D& x) const;
    std::uint8_t code_at(int index) const { return codes_[index]; }

    const Constellation& constellation() const { return constellation_; }
    const Labeling* labeling() const { return labeling_ ? &*labeling_ : nullptr; }
    const NoiseModel& noise() const { return model_; }
    double beta() const { return beta_; }
    double sigma_sq(int amplitude) const { return s2_[pam6_index(amplitude)]; }

private:
    void precompute();
    int detect_index_degenerate(const Observation2D& y) const;

    Constellation constellation_;
    std::optional<Labeling> labeling_;
    NoiseModel model_{};
    double beta_ = 0.0;
    std::array<double, 6> s2_{};
    std::array<double, 6> ln_s2_{};
    std::array<std::uint8_t, 32> a1_{};  // per point: amplitude index of x1
    std::array<std::uint8_t, 32> a2_{};
    std::array<std::uint8_t, 32> codes_{};
    bool any_zero_variance_ = false;
};

}  // namespace rinqam
