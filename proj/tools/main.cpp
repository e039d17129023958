#include <string>
#include <vector>

#include "osshift/cli.hpp"

int main(int argc, char** argv) {
    return osshift::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
