#include <iostream>

#include "chaut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return chaut::cli::run(args, std::cin, std::cout, std::cerr);
}
