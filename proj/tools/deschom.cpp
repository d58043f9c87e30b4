#include <iostream>

#include "deschom/cli.hpp"

int main(int argc, char** argv) { return deschom::cli::run(argc, argv, std::cout, std::cerr); }
