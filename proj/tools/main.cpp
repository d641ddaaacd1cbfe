#include <iostream>

#include "mixing/cli_runner.hpp"

int main(int argc, char** argv) { return mixing::cli::run(argc, argv, std::cout, std::cerr); }
