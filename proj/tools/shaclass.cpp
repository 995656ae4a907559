#include "shaclass/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return shaclass::run_cli(argc, argv, std::cout, std::cerr); }
