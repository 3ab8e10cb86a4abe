#pragma once

// Text format for constellation files, with optional labels:
//   #qam32 v1
//   <x1> <x2> [<b1b2b3b4b5>]     one line per point, 32 lines
// Output is always in canonical point order, so serialize/parse round-trips
// are byte-identical.

#include <optional>
#include <string>
#include <string_view>

#include "rinqam/constellation.hpp"
#include "rinqam/labeling.hpp"

namespace rinqam {

std::string serialize(const Constellation& c, const Labeling* labels = nullptr);

struct ParsedConstellation {
    Constellation constellation;
    std::optional<Labeling> labeling;
};

// Throws std::runtime_error on malformed input, wrong point count, or
// duplicate labels; labels must be present on all lines or on none.
ParsedConstellation parse_constellation(std::string_view text, std::string name = "parsed");

ParsedConstellation load_constellation_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace rinqam
