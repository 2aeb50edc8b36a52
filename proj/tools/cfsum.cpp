#include <iostream>

#include "cfsum/cli.hpp"

int main(int argc, char** argv) { return cfsum::cli::main_entry(argc, argv, std::cout, std::cerr); }
