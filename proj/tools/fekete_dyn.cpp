#include <iostream>

#include "fekete_dyn/cli.hpp"

int main(int argc, char** argv) { return fekete_dyn::run_cli(argc, argv, std::cout, std::cerr); }
