#include "rinqam/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rinqam {

namespace {
constexpr std::string_view kHeader = "#qam32 v1";
}

std::string serialize(const Constellation& c, const Labeling* labels) {
    std::ostringstream out;
    out << kHeader << '\n';
    for (const Point2D& p : c.points()) {
        out << p.x1 << ' ' << p.x2;
        if (labels) out << ' ' << label_to_string(labels->code_of(p));
        out << '\n';
    }
    return out.str();
}

ParsedConstellation parse_constellation(std::string_view text, std::string name) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::vector<Point2D> points;
    std::vector<std::pair<Point2D, std::uint8_t>> labeled;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (!header_seen) {
            if (line.substr(first) != kHeader)
                throw std::runtime_error("line 1: expected header '" + std::string(kHeader) +
                                         "'");
            header_seen = true;
            continue;
        }
        std::istringstream fields(line);
        int x1 = 0, x2 = 0;
        if (!(fields >> x1 >> x2))
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": expected two integer coordinates");
        if (!is_pam6(x1) || !is_pam6(x2))
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": coordinates must be in {-5,-3,-1,1,3,5}");
        const Point2D p{x1, x2};
        std::string bits;
        if (fields >> bits) {
            std::string trailing;
            if (fields >> trailing)
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": unexpected trailing field");
            try {
                labeled.emplace_back(p, parse_label(bits));
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        points.push_back(p);
    }

    if (!header_seen) throw std::runtime_error("empty file: missing header");
    if (points.size() != 32)
        throw std::runtime_error("wrong point count: expected 32, got " +
                                 std::to_string(points.size()));
    if (!labeled.empty() && labeled.size() != points.size())
        throw std::runtime_error("labels must be present on every line or on none");

    ParsedConstellation result;
    try {
        result.constellation = Constellation(std::move(points), std::move(name));
        if (!labeled.empty()) result.labeling = Labeling(std::move(labeled));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
    return result;
}

ParsedConstellation load_constellation_file(const std::string& path) {
    std::string stem = path;
    const auto slash = stem.find_last_of('/');
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    try {
        return parse_constellation(read_text_file(path), stem);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace rinqam
