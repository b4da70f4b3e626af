#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "picubed_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> budget;
  if (const char* env = std::getenv(picubed::cli::kBudgetEnvVar)) budget = env;
  return picubed::cli::run(args, std::cout, std::cerr, budget);
}
