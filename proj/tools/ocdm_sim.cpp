#include <iostream>

#include "ocdm/cli.hpp"

int main(int argc, char** argv) { return ocdm::cli::run(argc, argv, std::cout, std::cerr); }
