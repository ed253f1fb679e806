#include <string>
#include <vector>

#include "liouform/cli.hpp"

int main(int argc, char** argv) {
    return liouform::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
