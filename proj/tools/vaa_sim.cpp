#include <iostream>

#include "vaa/cli.hpp"

int main(int argc, char** argv) { return vaa::cli_main(argc, argv, std::cout, std::cerr); }
