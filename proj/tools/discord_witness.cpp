#include <iostream>

#include "discord/cli.hpp"

int main(int argc, char** argv) { return discord::cli::run(argc, argv, std::cout, std::cerr); }
