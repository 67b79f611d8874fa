#include <iostream>

#include "hyperfacet/cli.hpp"

int main(int argc, char** argv) {
    return hyperfacet::run_cli(argc, argv, std::cout, std::cerr);
}
