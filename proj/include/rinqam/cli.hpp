#pragma once

#include <string>
#include <vector>

namespace rinqam {

// Command-line front end; `args` excludes the program name.
// Exit codes: 0 success, 2 config/usage error, 1 runtime error.
int run_cli(std::vector<std::string> args);

// Help text for the sweep config surface (one line per config key).
std::string config_keys_help();

}  // namespace rinqam
