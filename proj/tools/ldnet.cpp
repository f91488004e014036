#include <iostream>
#include <string>
#include <vector>

#include "ldnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ldnet::cli::run(args, std::cout, std::cerr);
}
