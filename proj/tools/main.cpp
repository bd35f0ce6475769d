#include <iostream>

#include "crinv/cli/run.hpp"

int main(int argc, char** argv) { return crinv::cli::main_with_args(argc, argv, std::cout, std::cerr); }
