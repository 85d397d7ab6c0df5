#include <iostream>

#include "morita/cli.hpp"

int main(int argc, char** argv) { return morita::cli::run(argc, argv, std::cout, std::cerr); }
