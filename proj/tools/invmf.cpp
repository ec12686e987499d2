#include <iostream>
#include <string>
#include <vector>

#include "invmf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return invmf::cli::run(args, std::cout, std::cerr);
}
