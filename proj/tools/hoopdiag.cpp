#include "hoop/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hoop::run_main(argc, argv, std::cout, std::cerr); }
