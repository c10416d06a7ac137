#include <iostream>

#include "parclone/cli.hpp"

int main(int argc, char** argv) {
    return parclone::cli::run(argc, argv, std::cout, std::cerr);
}
