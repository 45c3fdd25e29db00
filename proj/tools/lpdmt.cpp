#include <string>
#include <vector>

#include "lpdmt/cli.hpp"

int main(int argc, char** argv) {
    return lpdmt::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
