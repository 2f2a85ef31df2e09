#include <iostream>

#include "vanishkit/cli.hpp"

int main(int argc, char** argv) { return vanishkit::run_cli(argc, argv, std::cout, std::cerr); }
