#include <iostream>
#include <string>
#include <vector>

#include "dac/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dac::run_cli(args, std::cout, std::cerr);
}
