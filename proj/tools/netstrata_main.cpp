#include <string>
#include <vector>

#include "netstrata/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return netstrata::cli::run(args);
}
