#include <iostream>
#include <string>
#include <vector>

#include "branchlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return branchlab::run(args, std::cout, std::cerr);
}
