#include "schedsim/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return schedsim::cli::run(args, std::cin, std::cout, std::cerr);
}
