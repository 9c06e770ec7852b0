#include <iostream>
#include <string>
#include <vector>

#include "isosep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return isosep::cli::run(args, std::cout, std::cerr);
}
