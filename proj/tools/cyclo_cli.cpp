#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto r = cyclo::cli::run(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.code;
}
