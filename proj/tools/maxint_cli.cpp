#include <iostream>

#include "maxint/cli.hpp"

int main(int argc, char** argv) { return maxint::cli_main(argc, argv, std::cout, std::cerr); }
