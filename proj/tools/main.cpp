#include <iostream>

#include "adiclab_cli/commands.hpp"

int main(int argc, char** argv) { return adiclab::cli::run(argc, argv, std::cout, std::cerr); }
