#include "spike_esn/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return spike_esn::cli::run(argc, argv, std::cout, std::cerr);
}
