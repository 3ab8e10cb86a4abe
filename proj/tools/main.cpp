#include <string>
#include <vector>

#include "rinqam/cli.hpp"

int main(int argc, char** argv) {
    return rinqam::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
