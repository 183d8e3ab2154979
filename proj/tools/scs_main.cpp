#include <iostream>

#include "scs/cli.hpp"

int main(int argc, char** argv) { return scs::run_cli(argc, argv, std::cout, std::cerr); }
