#include <iostream>
#include <string>
#include <vector>

#include "prodlab/report.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return prodlab::run(args, std::cout, std::cerr);
}
