#include <iostream>

#include "nfl/cli/commands.hpp"

int main(int argc, char** argv) { return nfl::cli::run_cli(argc, argv, std::cout, std::cerr); }
