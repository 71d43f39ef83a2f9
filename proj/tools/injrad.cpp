#include <iostream>

#include "injrad/cli.hpp"

int main(int argc, char** argv) { return injrad::cli::run(argc, argv, std::cout, std::cerr); }
