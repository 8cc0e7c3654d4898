#include <iostream>
#include <string>
#include <vector>

#include "divlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return divlab::cli::dispatch(args, std::cout, std::cerr);
}
