#include <iostream>

#include "hmfront/cli.hpp"

int main(int argc, char** argv) { return hmfront::cli::run(argc, argv, std::cout, std::cerr); }
