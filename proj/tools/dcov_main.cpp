#include <iostream>

#include "dcov/cli.hpp"

int main(int argc, char** argv) { return dcov::cli_main(argc, argv, std::cout, std::cerr); }
