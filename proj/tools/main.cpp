#include <iostream>

#include "oscnet/cli.hpp"

int main(int argc, char** argv) { return oscnet::cli_main(argc, argv, std::cout, std::cerr); }
