#include <string>
#include <vector>

#include "attrition/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return attrition::run_command(args);
}
