#include <iostream>
#include <string>
#include <vector>

#include "opendef/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return opendef::run(args, std::cout, std::cerr);
}
