#include <iostream>
#include <string>
#include <vector>

#include "eigengesture/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return eigengesture::cli::execute(args, std::cout, std::cerr);
}
