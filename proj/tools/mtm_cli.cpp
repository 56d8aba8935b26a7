#include <iostream>

#include "mtm/cli.hpp"

int main(int argc, char** argv) { return mtm::cli::run(argc, argv, std::cout, std::cerr); }
