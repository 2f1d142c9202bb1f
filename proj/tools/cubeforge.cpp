#include <iostream>
#include <string>
#include <vector>

#include "cubeforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cubeforge::run(args, std::cout, std::cerr);
}
