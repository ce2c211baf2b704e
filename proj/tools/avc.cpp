#include "avc/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return avc::cli::run(argc, argv, std::cout, std::cerr); }
