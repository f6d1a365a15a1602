#include <iostream>

#include "recbench/cli/commands.hpp"

int main(int argc, char** argv) { return recbench::cli::run(argc, argv, std::cout, std::cerr); }
