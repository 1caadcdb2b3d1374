#include <iostream>
#include <string>
#include <vector>

#include "lpf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lpf::cli::run(args, std::cout, std::cerr);
}
