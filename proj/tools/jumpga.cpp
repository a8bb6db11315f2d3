#include <iostream>

#include "jumpga/cli.hpp"

int main(int argc, char** argv) { return jumpga::cli::main_entry(argc, argv, std::cout, std::cerr); }
