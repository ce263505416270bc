#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return rhofactor::cli::run(argc, argv, std::cout, std::cerr); }
