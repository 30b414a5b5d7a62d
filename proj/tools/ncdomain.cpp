#include <iostream>

#include "ncdomain/cli.hpp"

int main(int argc, char** argv) { return ncdomain::cli::run(argc, argv, std::cout, std::cerr); }
