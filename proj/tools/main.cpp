#include "clusterbench/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return clusterbench::run_cli(argc, argv, std::cout, std::cerr); }
