#include <iostream>

#include "bh/cli.hpp"

int main(int argc, char** argv) { return bh::cli::main_entry(argc, argv, std::cout, std::cerr); }
