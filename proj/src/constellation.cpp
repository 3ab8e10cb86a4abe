#include "rinqam/constellation.hpp"

#include <algorithm>
#include <stdexcept>

namespace rinqam {

std::vector<Point2D> qam36() {
    std::vector<Point2D> pts;
    pts.reserve(36);
    for (int row = 0; row < 6; ++row) {
        for (int a : kPam6) pts.push_back(Point2D{a, 5 - 2 * row});
    }
    return pts;
}

Constellation::Constellation(std::vector<Point2D> points, std::string name)
    : points_(std::move(points)), name_(std::move(name)) {
    if (points_.size() != 32)
        throw std::invalid_argument("constellation must have exactly 32 points");
    std::sort(points_.begin(), points_.end(), canonical_less);
    index_by_cell_.fill(-1);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const int cell = grid_cell(points_[i]);  // validates coordinates
        if (index_by_cell_[cell] >= 0)
            throw std::invalid_argument("duplicate point in constellation");
        index_by_cell_[cell] = static_cast<std::int8_t>(i);
    }
}

RemovalSet make_removal_set(std::array<Point2D, 4> points) {
    std::sort(points.begin(), points.end(), canonical_less);
    for (int i = 0; i < 4; ++i) {
        (void)grid_cell(points[i]);
        if (i > 0 && points[i] == points[i - 1])
            throw std::invalid_argument("removal set must contain 4 distinct points");
    }
    return RemovalSet{points};
}

namespace {

RemovalSet quad_removal(int a, int b) {
    return make_removal_set({Point2D{a, b}, Point2D{a, -b}, Point2D{-a, b}, Point2D{-a, -b}});
}

}  // namespace

Constellation cross_qam32() { return remove_points(quad_removal(5, 5), "cross"); }

Constellation reference_qam32() { return remove_points(quad_removal(3, 3), "reference"); }

Constellation optimized_qam32() {
    return remove_points(
        make_removal_set({Point2D{1, 3}, Point2D{3, 1}, Point2D{3, 5}, Point2D{5, 3}}),
        "optimized");
}

Constellation remove_points(const RemovalSet& removal, std::string name) {
    std::vector<Point2D> pts;
    pts.reserve(32);
    for (const Point2D& p : qam36()) {
        if (std::find(removal.removed.begin(), removal.removed.end(), p) ==
            removal.removed.end())
            pts.push_back(p);
    }
    if (name.empty()) name = "qam32-minus-" + to_string(removal);
    return Constellation(std::move(pts), std::move(name));
}

RemovalSet removal_of(const Constellation& c) {
    std::array<Point2D, 4> gone{};
    int n = 0;
    for (const Point2D& p : qam36()) {
        if (!c.contains(p)) {
            if (n == 4) throw std::logic_error("constellation misses more than 4 grid points");
            gone[n++] = p;
        }
    }
    return make_removal_set(gone);
}

Constellation reflect_diagonal(const Constellation& c) {
    std::vector<Point2D> pts;
    pts.reserve(c.size());
    for (const Point2D& p : c.points()) pts.push_back(Point2D{p.x2, p.x1});
    return Constellation(std::move(pts), c.name());
}

RemovalSet reflect_diagonal(const RemovalSet& removal) {
    std::array<Point2D, 4> pts{};
    for (int i = 0; i < 4; ++i)
        pts[i] = Point2D{removal.removed[i].x2, removal.removed[i].x1};
    return make_removal_set(pts);
}

bool is_swap_closed(const RemovalSet& removal) {
    return reflect_diagonal(removal) == removal;
}

std::vector<RemovalSet> symmetric_removals() {
    // Building blocks under the swap: 6 diagonal points and 15 off-diagonal pairs.
    std::vector<Point2D> diag;
    std::vector<std::pair<Point2D, Point2D>> pairs;
    for (int a : kPam6) {
        diag.push_back(Point2D{a, a});
        for (int b : kPam6) {
            if (a < b) pairs.emplace_back(Point2D{a, b}, Point2D{b, a});
        }
    }

    std::vector<RemovalSet> out;
    out.reserve(345);
    // Four diagonal points.
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j)
            for (std::size_t k = j + 1; k < diag.size(); ++k)
                for (std::size_t l = k + 1; l < diag.size(); ++l)
                    out.push_back(make_removal_set({diag[i], diag[j], diag[k], diag[l]}));
    // One pair plus two diagonal points.
    for (const auto& pr : pairs)
        for (std::size_t i = 0; i < diag.size(); ++i)
            for (std::size_t j = i + 1; j < diag.size(); ++j)
                out.push_back(make_removal_set({pr.first, pr.second, diag[i], diag[j]}));
    // Two pairs.
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            out.push_back(make_removal_set(
                {pairs[i].first, pairs[i].second, pairs[j].first, pairs[j].second}));
    return out;
}

bool RemovalEnumerator::next(RemovalSet& out) {
    if (done_) return false;
    if (started_) {
        // Advance the combination indices (lexicographic over 0..35).
        int i = 3;
        while (i >= 0 && idx_[i] == 32 + i) --i;
        if (i < 0) {
            done_ = true;
            return false;
        }
        ++idx_[i];
        for (int j = i + 1; j < 4; ++j) idx_[j] = idx_[j - 1] + 1;
    }
    started_ = true;
    static const std::vector<Point2D> grid = qam36();
    out = make_removal_set({grid[idx_[0]], grid[idx_[1]], grid[idx_[2]], grid[idx_[3]]});
    return true;
}

std::string to_string(const Point2D& p) {
    return "(" + std::to_string(p.x1) + "," + std::to_string(p.x2) + ")";
}

std::string to_string(const RemovalSet& removal) {
    std::string s;
    for (const Point2D& p : removal.removed) s += to_string(p);
    return s;
}

}  // namespace rinqam
