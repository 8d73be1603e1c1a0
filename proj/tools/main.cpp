#include "cli.hpp"

#include <iostream>

int main(int argc, char ** argv)
{
    return graphhaus::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
