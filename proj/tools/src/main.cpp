#include <iostream>
#include <string>
#include <vector>

#include "entrosig/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return entrosig::cli::run_cli(args, std::cout, std::cerr);
}
