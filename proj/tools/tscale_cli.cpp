#include <iostream>
#include <string>
#include <vector>

#include "tscale/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tscale::cli::run(args, std::cout, std::cerr);
}
