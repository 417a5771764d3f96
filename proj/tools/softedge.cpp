#include <iostream>
#include <string>
#include <vector>

#include "softedge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return softedge::run_cli(args, std::cout, std::cerr);
}
