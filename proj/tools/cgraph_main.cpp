#include <iostream>

#include "cgraph/cli.hpp"

int main(int argc, char** argv) { return cgraph::run_cli(argc, argv, std::cout, std::cerr); }
