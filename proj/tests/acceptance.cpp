// Runs acceptance criteria 1-11 and prints one line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "cli/suites.hpp"

int main(int argc, char** argv) {
  int first = 1;
  int last = 11;
  if (argc == 2) first = last = std::atoi(argv[1]);
  bool all = true;
  for (int id = first; id <= last; ++id) {
    const auto result = dynregret::cli::run_criterion(id);
    std::cout << dynregret::cli::format_result(result) << std::endl;
    all = all && result.passed;
  }
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
