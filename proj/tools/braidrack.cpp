#include <iostream>

#include "braidrack/cli.hpp"

int main(int argc, char** argv) {
    return braidrack::cli::run_cli(argc, argv, std::cout, std::cerr);
}
