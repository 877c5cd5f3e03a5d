#include <iostream>
#include <string>
#include <vector>

#include "radix/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return radix::cli::run(args, std::cout, std::cerr);
}
