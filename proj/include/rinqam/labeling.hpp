#pragma once

// 5-bit labelings of 32-point constellations: Gray diagnostics over the
// nearest-neighbor graph, the seeded BRGC-product labeling for the optimized
// constellation, and the exhaustive completion search for the remaining points.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rinqam/constellation.hpp"

namespace rinqam {

// Label codes are 5-bit integers; the leftmost printed bit is the MSB (bit 4).
std::uint8_t parse_label(std::string_view bits);
std::string label_to_string(std::uint8_t code);

inline int hamming(std::uint8_t a, std::uint8_t b) {
    return __builtin_popcount(static_cast<unsigned>(a ^ b) & 0x1Fu);
}

// String form; rejects operands that are not 5-bit binary strings.
int hamming(std::string_view a, std::string_view b);

// Bijection between 32 points and the 32 5-bit labels.
class Labeling {
public:
    Labeling() = default;
    explicit Labeling(std::vector<std::pair<Point2D, std::uint8_t>> entries);

    std::uint8_t code_of(const Point2D& p) const;
    bool has(const Point2D& p) const;

    // Points in canonical order with their codes at matching indices.
    const std::vector<Point2D>& points() const { return points_; }
    const std::vector<std::uint8_t>& codes() const { return codes_; }

    friend bool operator==(const Labeling& a, const Labeling& b) {
        return a.points_ == b.points_ && a.codes_ == b.codes_;
    }

private:
    std::vector<Point2D> points_;
    std::vector<std::uint8_t> codes_;
    std::array<std::int8_t, 36> code_by_cell_{};
};

// Unordered point pairs at Euclidean distance 2 (axis-aligned grid neighbors).
struct NeighborGraph {
    std::vector<std::pair<Point2D, Point2D>> edges;
};

NeighborGraph neighbor_graph(const Constellation& c);

struct GrayCheck {
    bool gray = false;
    std::vector<std::pair<Point2D, Point2D>> violations;  // edges with distance != 1
};

GrayCheck is_gray(const Labeling& l, const NeighborGraph& g);

// Mean Hamming distance over all edges; rejects an empty edge set.
double avg_nn_hamming(const Labeling& l, const NeighborGraph& g);

// A labeling under construction: some points fixed, the rest to be assigned.
struct PartialLabeling {
    std::vector<std::pair<Point2D, std::uint8_t>> fixed;
    std::vector<Point2D> free_points;        // canonical order
    std::vector<std::uint8_t> free_codes;    // ascending
};

// Seeds the optimized constellation: a product of two 2-bit reflected Gray
// codes labels the 16 points with both coordinates in {-5,-3,-1,1} under a 0
// prefix, and the six points bordering that block copy their unique in-block
// neighbor's label with the prefix bit set. 22 points fixed, 10 left free.
PartialLabeling brgc_seed_labeling(const Constellation& optimized);

// Exhaustively assigns the free labels (all |free|! orders) minimizing the
// average neighbor Hamming distance; ties resolved toward the
// lexicographically smallest code sequence over points in canonical order.
Labeling complete_labeling(const PartialLabeling& partial, const Constellation& c,
                           const NeighborGraph& g, int threads = 0);

// Labelings of the three named constellations (embedded data).
Labeling cross_labeling();
Labeling reference_labeling();
Labeling optimized_labeling();

}  // namespace rinqam
