#include "tensegrity/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return tensegrity::cli::run_command(argc, argv, std::cout, std::cerr);
}
