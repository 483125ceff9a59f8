#include <iostream>

#include "qjacobi/cli.hpp"

int main(int argc, char** argv) { return qjacobi::cli::run(argc, argv, std::cout, std::cerr); }
