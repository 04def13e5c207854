#include <iostream>

#include "twave/commands.hpp"

int main(int argc, char** argv) { return twave::run_cli(argc, argv, std::cout, std::cerr); }
