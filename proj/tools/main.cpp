#include "pervcalc/cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> env_seed;
    if (const char* s = std::getenv("PERVCALC_SEED"))
        env_seed = s;
    return pervcalc::cli::run(args, std::cin, std::cout, std::cerr, env_seed);
}
