#include <iostream>
#include <string>
#include <vector>

#include "cklab/cli_reports.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cklab::cli_dispatch(args, std::cout, std::cerr);
}
