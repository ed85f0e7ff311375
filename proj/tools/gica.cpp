#include <iostream>

#include "gica/cli.hpp"

int main(int argc, char** argv) { return gica::cli::run(argc, argv, std::cout, std::cerr); }
