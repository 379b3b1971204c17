#include <iostream>
#include <string>
#include <vector>

#include "cleconn/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cleconn::run_cli(args, std::cout, std::cerr);
}
