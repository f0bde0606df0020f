#include <iostream>

#include "liereach/cli.hpp"

int main(int argc, char** argv) { return liereach::cli::run(argc, argv, std::cout, std::cerr); }
