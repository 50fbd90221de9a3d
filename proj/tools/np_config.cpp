#include <string>
#include <vector>

#include "npconfig/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return npc::cli::run(args);
}
