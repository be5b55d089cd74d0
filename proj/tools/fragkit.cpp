#include <iostream>

#include "fragkit/cli.hpp"

int main(int argc, char** argv) { return fragkit::run_cli(argc, argv, std::cout, std::cerr); }
