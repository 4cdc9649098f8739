// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any
// criterion fails. Optional arguments: --seed N --draws N --workers N.

#include <cstdlib>
#include <iostream>
#include <string>

#include "dirosc/harness/acceptance.hpp"

int main(int argc, char** argv) {
  dirosc::harness::AcceptanceOptions o;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const auto value = std::strtoull(argv[i + 1], nullptr, 10);
    if (flag == "--seed") o.seed = value;
    else if (flag == "--draws") o.draws = static_cast<int>(value);
    else if (flag == "--workers") o.workers = static_cast<int>(value);
    else {
      std::cerr << "unknown flag " << flag << '\n';
      return 2;
    }
  }
  const auto results = dirosc::harness::run_acceptance(o);
  for (const auto& r : results) std::cout << dirosc::harness::format_check(r) << '\n';
  const bool ok = dirosc::harness::all_passed(results);
  std::cout << (ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << '\n';
  return ok ? 0 : 1;
}
