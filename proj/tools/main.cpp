#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return gaflab::run(argc, argv, std::cout, std::cerr); }
