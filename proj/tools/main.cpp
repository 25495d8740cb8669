#include <iostream>
#include <string>
#include <vector>

#include "knotgeo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return knotgeo::run_cli(args, std::cout, std::cerr);
}
