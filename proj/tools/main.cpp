#include <iostream>

#include "qnio/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qnio::run_cli(args, std::cout, std::cerr);
}
