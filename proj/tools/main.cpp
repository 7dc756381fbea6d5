#include <iostream>

#include "mixedform/cli.hpp"

int main(int argc, char** argv) { return mixedform::cli::run(argc, argv, std::cout, std::cerr); }
