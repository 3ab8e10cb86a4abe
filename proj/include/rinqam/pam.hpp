#pragma once

#include <array>
#include <stdexcept>

namespace rinqam {

// PAM-6 amplitude alphabet, ascending.
inline constexpr std::array<int, 6> kPam6{-5, -3, -1, 1, 3, 5};

constexpr bool is_pam6(int a) {
    return a == -5 || a == -3 || a == -1 || a == 1 || a == 3 || a == 5;
}

// Index of an amplitude within kPam6; rejects values outside the alphabet.
inline int pam6_index(int a) {
    if (!is_pam6(a)) throw std::invalid_argument("amplitude not in PAM-6 alphabet");
    return (a + 5) / 2;
}

// One 2D symbol: two PAM-6 amplitudes sent on consecutive channel uses.
struct Point2D {
    int x1 = 0;
    int x2 = 0;
    friend bool operator==(const Point2D&, const Point2D&) = default;
};

// Canonical point order used for listings and tie-breaking:
// row-major, x2 descending then x1 ascending.
constexpr bool canonical_less(const Point2D& a, const Point2D& b) {
    if (a.x2 != b.x2) return a.x2 > b.x2;
    return a.x1 < b.x1;
}

// Flat index of a grid point in canonical order, 0..35.
inline int grid_cell(const Point2D& p) {
    return 6 * ((5 - p.x2) / 2) + pam6_index(p.x1);
}

struct Observation2D {
    double y1 = 0.0;
    double y2 = 0.0;
};

}  // namespace rinqam
