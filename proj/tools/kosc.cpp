#include <iostream>

#include "kosc/cli.hpp"

int main(int argc, char** argv) {
    return kosc::cli::run(argc, argv, std::cout, std::cerr);
}
