#include <iostream>

#include "gesp/cli.hpp"

int main(int argc, char** argv) { return gesp::cli_main(argc, argv, std::cout, std::cerr); }
