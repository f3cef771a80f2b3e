#include <iostream>
#include <string>
#include <vector>

#include "quadyn_app/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return quadyn::app::run_cli(args, std::cout, std::cerr);
}
