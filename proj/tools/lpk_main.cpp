#include "lpk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto r = lpk::cli::run_command(args);
    // errors go to stderr unless a JSON report was requested
    if (r.exit_code == lpk::cli::kInputError && !r.json) std::cerr << r.output();
    else std::cout << r.output();
    return r.exit_code;
}
