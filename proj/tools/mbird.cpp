#include <iostream>

#include "mbird/cli.hpp"

int main(int argc, char** argv) { return mbird::run_cli(argc, argv, std::cout, std::cerr); }
