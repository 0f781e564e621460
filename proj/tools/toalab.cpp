#include <iostream>

#include "toalab/cli.hpp"

int main(int argc, char** argv) { return toalab::cli::run(argc, argv, std::cout, std::cerr); }
