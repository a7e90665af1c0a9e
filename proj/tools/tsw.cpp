#include <iostream>

#include "tsw/cli.hpp"

int main(int argc, char **argv) { return tsw::cli_main(argc, argv, std::cout, std::cerr); }
