#include <iostream>
#include <string>
#include <vector>

#include "fusa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fusa::run_command(args, std::cout, std::cerr);
}
