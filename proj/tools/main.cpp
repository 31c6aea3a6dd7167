#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return loophom::cli::main(argc, argv, std::cout, std::cerr); }
