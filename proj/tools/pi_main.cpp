#include <iostream>

#include "rampi/cli.hpp"

int main(int argc, char** argv) {
    return rampi::run_cli(argc, argv, std::cout, std::cerr);
}
