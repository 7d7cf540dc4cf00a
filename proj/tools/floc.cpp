#include <iostream>

#include "floc/cli.hpp"

int main(int argc, char** argv) { return floc::cli::main(argc, argv, std::cout, std::cerr); }
