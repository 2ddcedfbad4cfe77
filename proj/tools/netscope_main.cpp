#include <iostream>

#include "netscope/cli.hpp"

int main(int argc, char** argv) {
    return netscope::cli::run(argc, argv, std::cout, std::cerr);
}
