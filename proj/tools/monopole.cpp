#include <iostream>

#include "monopole/cli.hpp"

int main(int argc, char** argv) { return monopole::cli::run_cli(argc, argv, std::cout, std::cerr); }
