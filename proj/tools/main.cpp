#include <iostream>
#include <string>
#include <vector>

#include "cvhg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cvhg::run_cli(args, std::cout, std::cerr);
}
