#include <iostream>
#include <string>
#include <vector>

#include "netspec/verify.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return netspec::run_command(args, std::cout, std::cerr);
}
