#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return dilatox::cli::run(argc, argv, std::cout, std::cerr); }
