#include <iostream>

#include "abcover/cli.hpp"

int main(int argc, char** argv) { return abcover::cli::run(argc, argv, std::cout, std::cerr); }
