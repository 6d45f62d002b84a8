// Acceptance runner: prints one PASS/FAIL line per criterion.
//   acceptance                 all criteria
//   acceptance --criterion N   only criterion N (may be repeated)

#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "spinvdw/checks.hpp"

int main(int argc, char** argv) {
  CLI::App app{"spinvdw acceptance criteria"};
  std::vector<int> which;
  app.add_option("--criterion", which, "criterion number")->check(CLI::Range(1, spinvdw::criterion_count));
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) {
    for (int n = 1; n <= spinvdw::criterion_count; ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) {
    const auto r = spinvdw::run_criterion_guarded(n);
    std::cout << spinvdw::format_check(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
