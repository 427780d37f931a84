#include <iostream>

#include "dysthe/cli.hpp"

int main(int argc, char** argv) { return dysthe::cli_main(argc, argv, std::cout, std::cerr); }
