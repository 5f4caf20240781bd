#include <iostream>
#include <vector>

#include "efsmdes/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return efsmdes::cli_dispatch(std::move(args), std::cout, std::cerr);
}
