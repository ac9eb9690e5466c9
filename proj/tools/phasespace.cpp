#include <iostream>

#include "phasespace/cli.hpp"

int main(int argc, char** argv) { return phasespace::cli::run(argc, argv, std::cout, std::cerr); }
