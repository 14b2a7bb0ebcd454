#include <iostream>
#include <string>
#include <vector>

#include "wardseq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wardseq::run_cli(args, std::cout, std::cerr);
}
