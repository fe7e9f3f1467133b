#include <iostream>
#include <vector>

#include "spakit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  spakit::cli::CommandResult result = spakit::cli::run(args);
  if (!result.diagnostics.empty()) std::cerr << result.diagnostics << "\n";
  if (result.exit_code == 0) std::cout << result.rendered;
  return result.exit_code;
}
