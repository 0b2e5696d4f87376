#include <iostream>

#include "ptk/app/commands.hpp"

int main(int argc, char** argv) {
    return ptk::app::run_cli(argc, argv, std::cout, std::cerr);
}
