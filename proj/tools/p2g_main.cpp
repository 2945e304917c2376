#include <iostream>
#include <string>
#include <vector>

#include "p2g/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return p2g::cli::run(args, std::cout, std::cerr);
}
