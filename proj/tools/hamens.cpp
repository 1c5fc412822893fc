#include <iostream>

#include "hamens/cli.hpp"

int main(int argc, char** argv)
{
    return hamens::cli::run(argc, argv, std::cout, std::cerr);
}
