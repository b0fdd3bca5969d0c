#include <iostream>
#include <string>
#include <vector>

#include "fibdelay/cli.hpp"

#ifndef FIBDELAY_DEFAULT_FIXTURE
#define FIBDELAY_DEFAULT_FIXTURE ""
#endif

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = fibdelay::cli::run(args, FIBDELAY_DEFAULT_FIXTURE);
  std::cout << result.output;
  if (!result.error.empty()) std::cerr << result.error << '\n';
  return result.exit_code;
}
