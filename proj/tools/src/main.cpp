#include <iostream>
#include <string>
#include <vector>

#include "jatecs_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jatecs::cli::run(std::move(args), std::cout, std::cerr);
}
