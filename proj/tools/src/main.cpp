#include <iostream>

#include "phragmen_cli/cli.hpp"

int main(int argc, char** argv) { return phragmen::cli::cli_main(argc, argv, std::cout, std::cerr); }
