#include <iostream>
#include <string>
#include <vector>

#include "finmok/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return finmok::run_cli(args, std::cout, std::cerr);
}
