#include <iostream>

#include "dioph/cli.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return dioph::run_cli(args, std::cout, std::cerr);
}
