#include <iostream>

#include "qgrav/cli.hpp"

int main(int argc, char** argv) { return qgrav::run_cli(argc, argv, std::cout, std::cerr); }
