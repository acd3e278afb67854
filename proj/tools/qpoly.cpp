#include <iostream>

#include "qpoly/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qpoly::run(args, std::cout, std::cerr);
}
