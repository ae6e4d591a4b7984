#include "amp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return amp::run_cli(argc, argv, std::cout, std::cerr); }
