#include <iostream>

#include "powerstab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = powerstab::run_command(args);
  std::cout << result.output;
  std::cerr << result.error;
  return result.exit_code;
}
