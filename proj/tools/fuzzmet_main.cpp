#include <iostream>
#include <string>
#include <vector>

#include "fuzzmet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fuzz::run_cli(std::move(args), std::cin, std::cout, std::cerr);
}
