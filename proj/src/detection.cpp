#include "rinqam/detection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rinqam {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Detector::Detector(Constellation c, NoiseModel model, double beta)
    : constellation_(std::move(c)), model_(model), beta_(beta) {
    precompute();
}

Detector::Detector(Constellation c, Labeling labeling, NoiseModel model, double beta)
    : constellation_(std::move(c)), labeling_(std::move(labeling)), model_(model), beta_(beta) {
    precompute();
}

void Detector::precompute() {
    if (constellation_.size() != 32)
        throw std::invalid_argument("detector needs a 32-point constellation");
    for (int i = 0; i < 6; ++i) {
        const double biased = kPam6[i] + beta_;
        s2_[i] = model_.sigma_th_sq + biased * biased * model_.sigma_rin_sq;
        ln_s2_[i] = s2_[i] > 0.0 ? std::log(s2_[i]) : -kInf;
        if (s2_[i] <= 0.0) any_zero_variance_ = true;
    }
    const auto& pts = constellation_.points();
    for (std::size_t p = 0; p < pts.size(); ++p) {
        a1_[p] = static_cast<std::uint8_t>(pam6_index(pts[p].x1));
        a2_[p] = static_cast<std::uint8_t>(pam6_index(pts[p].x2));
        if (labeling_) codes_[p] = labeling_->code_of(pts[p]);
    }
}

double Detector::log_likelihood(const Observation2D& y, const Point2D& x) const {
    if (!constellation_.contains(x))
        throw std::invalid_argument("point " + to_string(x) + " not in constellation");
    const int i1 = pam6_index(x.x1);
    const int i2 = pam6_index(x.x2);
    bool exact = false;
    double sum = 0.0;
    const double ys[2] = {y.y1, y.y2};
    const int idx[2] = {i1, i2};
    const double mus[2] = {static_cast<double>(x.x1), static_cast<double>(x.x2)};
    for (int d = 0; d < 2; ++d) {
        const double s2 = s2_[idx[d]];
        const double r = ys[d] - mus[d];
        if (s2 <= 0.0) {
            if (r != 0.0) return -kInf;  // density zero
            exact = true;                // point mass hit exactly
        } else {
            sum += ln_s2_[idx[d]] + r * r / s2;
        }
    }
    if (exact) return kInf;
    return -0.5 * sum;
}

int Detector::detect_index(const Observation2D& y) const {
    if (any_zero_variance_) return detect_index_degenerate(y);
    double f1[6], f2[6];
    for (int i = 0; i < 6; ++i) {
        const double r1 = y.y1 - kPam6[i];
        const double r2 = y.y2 - kPam6[i];
        f1[i] = ln_s2_[i] + r1 * r1 / s2_[i];
        f2[i] = ln_s2_[i] + r2 * r2 / s2_[i];
    }
    int best = 0;
    double best_cost = kInf;
    const int n = static_cast<int>(constellation_.size());
    for (int p = 0; p < n; ++p) {
        const double cost = f1[a1_[p]] + f2[a2_[p]];
        if (cost < best_cost) {
            best_cost = cost;
            best = p;
        }
    }
    return best;
}

// Some amplitude has zero variance (possible at beta = 5 with no thermal
// noise). Candidates mismatching a zero-variance dimension have zero density;
// exact hits on a point mass dominate any finite density.
int Detector::detect_index_degenerate(const Observation2D& y) const {
    const int n = static_cast<int>(constellation_.size());
    const auto& pts = constellation_.points();
    int best = -1;
    int best_hits = -1;
    double best_cost = kInf;
    for (int p = 0; p < n; ++p) {
        int hits = 0;
        double cost = 0.0;
        bool valid = true;
        const double rs[2] = {y.y1 - pts[p].x1, y.y2 - pts[p].x2};
        const int idx[2] = {a1_[p], a2_[p]};
        for (int d = 0; d < 2 && valid; ++d) {
            if (s2_[idx[d]] <= 0.0) {
                if (rs[d] != 0.0)
                    valid = false;
                else
                    ++hits;
            } else {
                cost += ln_s2_[idx[d]] + rs[d] * rs[d] / s2_[idx[d]];
            }
        }
        if (!valid) continue;
        if (hits > best_hits || (hits == best_hits && cost < best_cost)) {
            best = p;
            best_hits = hits;
            best_cost = cost;
        }
    }
    if (best >= 0) return best;
    // Every candidate mismatched a point mass; fall back to plain distance.
    double best_d2 = kInf;
    best = 0;
    for (int p = 0; p < n; ++p) {
        const double d1 = y.y1 - pts[p].x1;
        const double d2 = y.y2 - pts[p].x2;
        const double dist = d1 * d1 + d2 * d2;
        if (dist < best_d2) {
            best_d2 = dist;
            best = p;
        }
    }
    return best;
}

Point2D Detector::detect(const Observation2D& y) const {
    return constellation_.points()[detect_index(y)];
}

std::uint8_t Detector::demap(const Point2D& x) const {
    if (!labeling_) throw std::logic_error("detector has no labeling");
    const int i = constellation_.index_of(x);
    if (i < 0) throw std::invalid_argument("point " + to_string(x) + " not in constellation");
    return codes_[i];
}

}  // namespace rinqam
