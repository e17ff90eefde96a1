#include <iostream>
#include <string>
#include <vector>

#include "tacho/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tacho::cli::run(args, std::cout, std::cerr);
}
