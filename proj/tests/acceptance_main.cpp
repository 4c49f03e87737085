// Acceptance runner: one pass/fail line per criterion, exit 0 iff all pass.
// Usage: acceptance [A1 ... A13 | S1 | all] [--with-stretch]

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "spehlab/verify.hpp"

using namespace spehlab;

int main(int argc, char** argv) {
  std::vector<std::string> ids;
  bool with_stretch = false;
  for (int i = 1; i < argc; ++i) {
    if (!strcmp(argv[i], "--with-stretch")) {
      with_stretch = true;
    } else if (!strcmp(argv[i], "all")) {
      for (const auto& [name, fn] : all_checks())
        if (name != "S1") ids.push_back(name);
    } else {
      ids.push_back(argv[i]);
    }
  }
  if (ids.empty())
    for (const auto& [name, fn] : all_checks())
      if (name != "S1") ids.push_back(name);
  if (with_stretch) ids.push_back("S1");

  Workspace ws(0);
  VerifyConfig cfg;
  bool ok = true;
  for (const auto& id : ids) {
    try {
      CheckResult r = run_criterion(id, ws, cfg);
      printf("%-4s %-4s residual=%.3e  (%.1fs)  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL",
             r.residual, r.seconds, r.detail.c_str());
      ok = ok && r.pass;
    } catch (const std::exception& e) {
      printf("%-4s FAIL exception: %s\n", id.c_str(), e.what());
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
