#include "pursuit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pursuit::runCli(std::move(args), std::cout, std::cerr);
}
