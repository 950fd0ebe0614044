#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "stirval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  stirval::cli::Terminal term;
  term.color = ::isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
  return stirval::cli::run(args, std::cout, std::cerr, term);
}
