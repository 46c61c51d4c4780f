#include "cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    return wcount::cli::dispatch(args, std::cout, std::cerr, [](const char* name) { return std::getenv(name); });
}
