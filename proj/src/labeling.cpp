#include "rinqam/labeling.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "rinqam/parallel.hpp"

namespace rinqam {

std::uint8_t parse_label(std::string_view bits) {
    if (bits.size() != 5) throw std::invalid_argument("label must have exactly 5 bits");
    std::uint8_t code = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("label must be binary");
        code = static_cast<std::uint8_t>((code << 1) | (ch == '1'));
    }
    return code;
}

std::string label_to_string(std::uint8_t code) {
    std::string s(5, '0');
    for (int i = 0; i < 5; ++i) {
        if (code & (1u << (4 - i))) s[i] = '1';
    }
    return s;
}

int hamming(std::string_view a, std::string_view b) {
    if (a.size() != 5 || b.size() != 5)
        throw std::invalid_argument("hamming distance needs two 5-bit strings");
    return hamming(parse_label(a), parse_label(b));
}

Labeling::Labeling(std::vector<std::pair<Point2D, std::uint8_t>> entries) {
    if (entries.size() != 32) throw std::invalid_argument("labeling must have 32 entries");
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    code_by_cell_.fill(-1);
    std::uint32_t used = 0;
    points_.reserve(32);
    codes_.reserve(32);
    for (const auto& [p, code] : entries) {
        const int cell = grid_cell(p);
        if (code_by_cell_[cell] >= 0) throw std::invalid_argument("duplicate point in labeling");
        if (code >= 32) throw std::invalid_argument("label code out of range");
        if (used & (1u << code))
            throw std::invalid_argument("duplicate label " + label_to_string(code));
        used |= 1u << code;
        code_by_cell_[cell] = static_cast<std::int8_t>(code);
        points_.push_back(p);
        codes_.push_back(code);
    }
}

std::uint8_t Labeling::code_of(const Point2D& p) const {
    if (!has(p)) throw std::invalid_argument("point " + to_string(p) + " has no label");
    return static_cast<std::uint8_t>(code_by_cell_[grid_cell(p)]);
}

bool Labeling::has(const Point2D& p) const {
    return is_pam6(p.x1) && is_pam6(p.x2) && code_by_cell_[grid_cell(p)] >= 0;
}

NeighborGraph neighbor_graph(const Constellation& c) {
    NeighborGraph g;
    for (const Point2D& p : c.points()) {
        // Right and downward neighbors only, so each unordered pair appears once.
        const Point2D right{p.x1 + 2, p.x2};
        if (p.x1 < 5 && c.contains(right)) g.edges.emplace_back(p, right);
        const Point2D below{p.x1, p.x2 - 2};
        if (p.x2 > -5 && c.contains(below)) g.edges.emplace_back(p, below);
    }
    return g;
}

GrayCheck is_gray(const Labeling& l, const NeighborGraph& g) {
    GrayCheck result;
    for (const auto& [u, v] : g.edges) {
        if (hamming(l.code_of(u), l.code_of(v)) != 1) result.violations.emplace_back(u, v);
    }
    result.gray = result.violations.empty();
    return result;
}

double avg_nn_hamming(const Labeling& l, const NeighborGraph& g) {
    if (g.edges.empty()) throw std::invalid_argument("neighbor graph has no edges");
    long sum = 0;
    for (const auto& [u, v] : g.edges) sum += hamming(l.code_of(u), l.code_of(v));
    return static_cast<double>(sum) / static_cast<double>(g.edges.size());
}

PartialLabeling brgc_seed_labeling(const Constellation& optimized) {
    if (!(optimized == optimized_qam32()))
        throw std::invalid_argument("seed labeling is defined for the optimized constellation");

    // 2-bit reflected Gray code over the four lowest amplitudes.
    const auto gray2 = [](int a) -> std::uint8_t {
        switch (a) {
            case -5: return 0b00;
            case -3: return 0b01;
            case -1: return 0b11;
            default: return 0b10;  // a == 1
        }
    };
    const auto in_block = [](const Point2D& p) {
        return p.x1 <= 1 && p.x2 <= 1;
    };

    PartialLabeling partial;
    for (const Point2D& p : optimized.points()) {
        if (in_block(p))
            partial.fixed.emplace_back(
                p, static_cast<std::uint8_t>((gray2(p.x1) << 2) | gray2(p.x2)));
    }
    // Border points with a unique in-block grid neighbor copy its label and set
    // the prefix bit.
    for (const Point2D& p : optimized.points()) {
        if (in_block(p)) continue;
        Point2D nb{};
        int count = 0;
        for (const Point2D q : {Point2D{p.x1 - 2, p.x2}, Point2D{p.x1 + 2, p.x2},
                                Point2D{p.x1, p.x2 - 2}, Point2D{p.x1, p.x2 + 2}}) {
            if (std::abs(q.x1) <= 5 && std::abs(q.x2) <= 5 && in_block(q) &&
                optimized.contains(q)) {
                nb = q;
                ++count;
            }
        }
        if (count == 1)
            partial.fixed.emplace_back(
                p, static_cast<std::uint8_t>(0b10000 | ((gray2(nb.x1) << 2) | gray2(nb.x2))));
    }

    std::sort(partial.fixed.begin(), partial.fixed.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });

    std::uint32_t used = 0;
    for (const auto& [p, code] : partial.fixed) used |= 1u << code;
    for (const Point2D& p : optimized.points()) {
        if (std::none_of(partial.fixed.begin(), partial.fixed.end(),
                         [&](const auto& e) { return e.first == p; }))
            partial.free_points.push_back(p);
    }
    for (std::uint8_t code = 0; code < 32; ++code) {
        if (!(used & (1u << code))) partial.free_codes.push_back(code);
    }
    return partial;
}

namespace {

struct SearchResult {
    long sum = -1;
    std::vector<std::uint8_t> codes;  // per free point
};

}  // namespace

Labeling complete_labeling(const PartialLabeling& partial, const Constellation& c,
                           const NeighborGraph& g, int threads) {
    const std::size_t nf = partial.free_points.size();
    if (nf != partial.free_codes.size())
        throw std::invalid_argument("free point and free label counts differ");
    if (partial.fixed.size() + nf != c.size())
        throw std::invalid_argument("partial labeling does not cover the constellation");
    if (nf > 10) throw std::invalid_argument("too many free points for exhaustive search");

    std::array<std::int8_t, 36> free_index{};
    free_index.fill(-1);
    std::array<std::int8_t, 36> fixed_code{};
    fixed_code.fill(-1);
    for (std::size_t i = 0; i < nf; ++i)
        free_index[grid_cell(partial.free_points[i])] = static_cast<std::int8_t>(i);
    for (const auto& [p, code] : partial.fixed)
        fixed_code[grid_cell(p)] = static_cast<std::int8_t>(code);

    // Only edges touching a free point change across assignments; edges between
    // two fixed points add a constant to the objective and never move the argmin.
    struct FreeFree { int i, j; };
    struct FreeFixed { int i; std::uint8_t code; };
    std::vector<FreeFree> ff;
    std::vector<FreeFixed> fx;
    for (const auto& [u, v] : g.edges) {
        const int fu = free_index[grid_cell(u)];
        const int fv = free_index[grid_cell(v)];
        if (fu >= 0 && fv >= 0) {
            ff.push_back({fu, fv});
        } else if (fu >= 0) {
            fx.push_back({fu, static_cast<std::uint8_t>(fixed_code[grid_cell(v)])});
        } else if (fv >= 0) {
            fx.push_back({fv, static_cast<std::uint8_t>(fixed_code[grid_cell(u)])});
        }
    }

    std::vector<std::uint8_t> base = partial.free_codes;
    std::sort(base.begin(), base.end());

    if (nf == 0) return Labeling(partial.fixed);

    // Partition the permutation space by the first assigned code; each task
    // enumerates the remaining codes in lexicographic order, so the first
    // minimum found within a task (and the lowest winning task) is the
    // lexicographically smallest optimal code sequence.
    const auto run_task = [&](std::size_t t) {
        std::vector<std::uint8_t> codes(nf);
        codes[0] = base[t];
        std::vector<std::uint8_t> rest;
        for (std::size_t i = 0; i < nf; ++i) {
            if (i != t) rest.push_back(base[i]);
        }
        SearchResult best;
        do {
            std::copy(rest.begin(), rest.end(), codes.begin() + 1);
            long sum = 0;
            for (const auto& e : ff) sum += hamming(codes[e.i], codes[e.j]);
            for (const auto& e : fx) sum += hamming(codes[e.i], e.code);
            if (best.sum < 0 || sum < best.sum) {
                best.sum = sum;
                best.codes = codes;
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
        return best;
    };

    std::vector<SearchResult> per_task(nf);
    parallel_for(nf, threads, [&](std::size_t t) { per_task[t] = run_task(t); });

    SearchResult best;
    for (const SearchResult& r : per_task) {
        if (best.sum < 0 || r.sum < best.sum ||
            (r.sum == best.sum && r.codes < best.codes)) {
            best = r;
        }
    }

    std::vector<std::pair<Point2D, std::uint8_t>> entries = partial.fixed;
    for (std::size_t i = 0; i < nf; ++i)
        entries.emplace_back(partial.free_points[i], best.codes[i]);
    return Labeling(std::move(entries));
}

namespace {

struct LabelRow {
    int x1, x2;
    const char* bits;
};

Labeling from_rows(const LabelRow (&rows)[32]) {
    std::vector<std::pair<Point2D, std::uint8_t>> entries;
    entries.reserve(32);
    for (const LabelRow& r : rows)
        entries.emplace_back(Point2D{r.x1, r.x2}, parse_label(r.bits));
    return Labeling(std::move(entries));
}

// Quasi-symmetric ultracomposite labeling of the cross constellation.
constexpr LabelRow kCrossRows[32] = {
    {-3, 5, "01100"},  {-1, 5, "01110"},  {1, 5, "11110"},   {3, 5, "11100"},
    {-5, 3, "01111"},  {-3, 3, "01011"},  {-1, 3, "01010"},  {1, 3, "11010"},
    {3, 3, "11011"},   {5, 3, "11111"},   {-5, 1, "01101"},  {-3, 1, "01001"},
    {-1, 1, "01000"},  {1, 1, "11000"},   {3, 1, "11001"},   {5, 1, "11101"},
    {-5, -1, "00101"}, {-3, -1, "00001"}, {-1, -1, "00000"}, {1, -1, "10000"},
    {3, -1, "10001"},  {5, -1, "10101"},  {-5, -3, "00111"}, {-3, -3, "00011"},
    {-1, -3, "00010"}, {1, -3, "10010"},  {3, -3, "10011"},  {5, -3, "10111"},
    {-3, -5, "00100"}, {-1, -5, "00110"}, {1, -5, "10110"},  {3, -5, "10100"},
};

// Gray labeling of the reference constellation.
constexpr LabelRow kReferenceRows[32] = {
    {-5, 5, "10000"},  {-3, 5, "10001"},  {-1, 5, "10011"},  {1, 5, "11011"},
    {3, 5, "11001"},   {5, 5, "11000"},   {-5, 3, "10100"},  {-1, 3, "10010"},
    {1, 3, "11010"},   {5, 3, "11100"},   {-5, 1, "10101"},  {-3, 1, "10111"},
    {-1, 1, "10110"},  {1, 1, "11110"},   {3, 1, "11111"},   {5, 1, "11101"},
    {-5, -1, "00101"}, {-3, -1, "00111"}, {-1, -1, "00110"}, {1, -1, "01110"},
    {3, -1, "01111"},  {5, -1, "01101"},  {-5, -3, "00100"}, {-1, -3, "00010"},
    {1, -3, "01010"},  {5, -3, "01100"},  {-5, -5, "00000"}, {-3, -5, "00001"},
    {-1, -5, "00011"}, {1, -5, "01011"},  {3, -5, "01001"},  {5, -5, "01000"},
};

// Near-Gray labeling of the optimized constellation.
constexpr LabelRow kOptimizedRows[32] = {
    {-5, 5, "10000"},  {-3, 5, "10100"},  {-1, 5, "11100"},  {1, 5, "11101"},
    {5, 5, "10101"},   {-5, 3, "10010"},  {-3, 3, "10110"},  {-1, 3, "11110"},
    {3, 3, "11111"},   {-5, 1, "00010"},  {-3, 1, "00110"},  {-1, 1, "01110"},
    {1, 1, "01010"},   {5, 1, "10111"},   {-5, -1, "00011"}, {-3, -1, "00111"},
    {-1, -1, "01111"}, {1, -1, "01011"},  {3, -1, "11011"},  {5, -1, "10011"},
    {-5, -3, "00001"}, {-3, -3, "00101"}, {-1, -3, "01101"}, {1, -3, "01001"},
    {3, -3, "11001"},  {5, -3, "10001"},  {-5, -5, "00000"}, {-3, -5, "00100"},
    {-1, -5, "01100"}, {1, -5, "01000"},  {3, -5, "11000"},  {5, -5, "11010"},
};

}  // namespace

Labeling cross_labeling() { return from_rows(kCrossRows); }
Labeling reference_labeling() { return from_rows(kReferenceRows); }
Labeling optimized_labeling() { return from_rows(kOptimizedRows); }

}  // namespace rinqam
