// One line per acceptance criterion; exits nonzero if any fails.

#include "gdnce/verify.hpp"

#include <cstdio>

int main() {
  bool all = true;
  for (const auto& r : gdnce::verify_paper()) {
    std::printf("criterion %2d %s: %s (%s; %.1fs)\n", r.id, r.pass ? "PASS" : "FAIL", r.claim.c_str(),
                r.detail.c_str(), r.seconds);
    all = all && r.pass;
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
