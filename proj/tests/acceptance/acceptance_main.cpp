// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <cstdlib>

#include "tailsim/validation.hpp"

int main(int argc, char** argv) {
  tailsim::ValidationOptions opt;
  for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
  int failed = 0;
  tailsim::run_acceptance(opt, [&](const tailsim::CheckResult& r) {
    std::printf("%s\n", tailsim::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
