#include <iostream>

#include "fwdis/cli.hpp"

int main(int argc, char** argv) { return fwdis::cli::run(argc, argv, std::cout, std::cerr); }
