#include <iostream>

#include "piltz/cli.hpp"

int main(int argc, char** argv) { return piltz::cli_dispatch(argc, argv, std::cout, std::cerr); }
