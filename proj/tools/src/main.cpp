#include <iostream>
#include <string>
#include <vector>

#include "genreach_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return genreach::cli::run(args, std::cout, std::cerr);
}
