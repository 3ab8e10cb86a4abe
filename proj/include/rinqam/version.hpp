#pragma once

namespace rinqam {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rinqam
