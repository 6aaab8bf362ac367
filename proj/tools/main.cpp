#include <iostream>

#include "invroot/cli.hpp"

int main(int argc, char** argv) { return invroot::cli::run(argc, argv, std::cout, std::cerr); }
