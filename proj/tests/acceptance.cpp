#include <cstdio>
#include <filesystem>
#include <iostream>

#include "rspan/suite.hpp"

int main(int argc, char** argv) {
  rspan::SuiteOptions o;
  o.full = !(argc > 1 && std::string(argv[1]) == "smoke");
  o.scratch = std::filesystem::temp_directory_path() / ("rspan_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(o.scratch);
  int failed = 0;
  rspan::run_acceptance(o, [&](const rspan::CriterionResult& r) {
    std::cout << rspan::format_row(r) << std::endl;
    failed += r.pass ? 0 : 1;
  });
  std::filesystem::remove_all(o.scratch);
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
