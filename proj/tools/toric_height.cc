#include <iostream>
#include <string>
#include <vector>

#include "toricheight/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return toricheight::run_cli(args, std::cout, std::cerr);
}
