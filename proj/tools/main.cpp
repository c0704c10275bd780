#include <iostream>

#include "schwarzsl/cli.hpp"

int main(int argc, char** argv) { return schwarzsl::cli::main(argc, argv, std::cout, std::cerr); }
