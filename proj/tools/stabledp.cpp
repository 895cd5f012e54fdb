#include <iostream>

#include "stabledp/cli.hpp"

int main(int argc, char** argv) { return stabledp::run_cli(argc, argv, std::cout, std::cerr); }
