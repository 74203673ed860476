#include <iostream>

#include "floqcool_cli/commands.hpp"

int main(int argc, char** argv) {
    return floqcool::cli::run(argc, argv, std::cout, std::cerr);
}
