#include "osmot/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return osmot::cli_main(argc, argv, std::cout, std::cerr); }
