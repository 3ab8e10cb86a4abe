#pragma once

// 32-point subsets of the 6x6 PAM-6 grid: the named constellations, diagonal
// reflection, and enumeration of candidate removal sets for the subset search.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rinqam/pam.hpp"

namespace rinqam {

// The full 6x6 grid in canonical order.
std::vector<Point2D> qam36();

class Constellation {
public:
    Constellation() = default;

    // Accepts exactly 32 distinct grid points, stored in canonical order.
    Constellation(std::vector<Point2D> points, std::string name);

    const std::vector<Point2D>& points() const { return points_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return points_.size(); }

    bool contains(const Point2D& p) const { return index_of(p) >= 0; }

    // Position in canonical order, -1 if the point is not present.
    int index_of(const Point2D& p) const {
        return is_pam6(p.x1) && is_pam6(p.x2) ? index_by_cell_[grid_cell(p)] : -1;
    }

    friend bool operator==(const Constellation& a, const Constellation& b) {
        return a.points_ == b.points_;
    }

private:
    std::vector<Point2D> points_;
    std::string name_;
    std::array<std::int8_t, 36> index_by_cell_{};
};

// The four grid points removed to form a 32-point subset, canonical order.
struct RemovalSet {
    std::array<Point2D, 4> removed{};

    friend bool operator==(const RemovalSet&, const RemovalSet&) = default;
};

// Normalizes (sorts) and validates four distinct grid points.
RemovalSet make_removal_set(std::array<Point2D, 4> points);

// Cross QAM-32: corners removed.
Constellation cross_qam32();
// Reference QAM-32: middle point of each quadrant removed.
Constellation reference_qam32();
// Optimized QAM-32: removes {(1,3),(3,1),(3,5),(5,3)}.
Constellation optimized_qam32();

// Complement of a removal set, in canonical order.
Constellation remove_points(const RemovalSet& removal, std::string name = "");

// The four grid points absent from a constellation.
RemovalSet removal_of(const Constellation& c);

// Coordinate swap (a,b) -> (b,a), re-canonicalized.
Constellation reflect_diagonal(const Constellation& c);
RemovalSet reflect_diagonal(const RemovalSet& removal);
bool is_swap_closed(const RemovalSet& removal);

// All 4-point removal sets closed under the coordinate swap; exactly 345.
std::vector<RemovalSet> symmetric_removals();

// Lazy enumeration of all C(36,4) = 58905 removal sets.
class RemovalEnumerator {
public:
    // Writes the next set into `out`; returns false once exhausted.
    bool next(RemovalSet& out);

private:
    std::array<int, 4> idx_{0, 1, 2, 3};
    bool done_ = false;
    bool started_ = false;
};

std::string to_string(const Point2D& p);
std::string to_string(const RemovalSet& removal);

}  // namespace rinqam
