#include <iostream>

#include "transiso/cli.hpp"

int main(int argc, char** argv) { return transiso::run_cli(argc, argv, std::cout, std::cerr); }
