#include <iostream>

#include "mqg/cli.hpp"

int main(int argc, char** argv) { return mqg::run_cli(argc, argv, std::cout, std::cerr); }
