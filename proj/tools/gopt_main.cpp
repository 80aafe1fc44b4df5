#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "gopt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  gopt::cli::Environment env;
  env.color = std::getenv("GOPT_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO) != 0;
  return gopt::cli::run(args, std::cout, std::cerr, env);
}
