#include <iostream>
#include <string>
#include <vector>

#include "arsenti_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return arsenti::cli::run(args, std::cin, std::cout, std::cerr);
}
