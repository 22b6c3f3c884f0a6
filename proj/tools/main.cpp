#include <iostream>

#include "dpgraph/cli.hpp"

int main(int argc, char** argv) { return dpgraph::run_cli(argc, argv, std::cout, std::cerr); }
