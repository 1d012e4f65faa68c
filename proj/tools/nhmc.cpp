#include "nhmc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nhmc::cli::run(argc, argv, std::cout, std::cerr); }
