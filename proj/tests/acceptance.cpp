// Acceptance gate: run every verification suite and print one line per
// criterion. Exit status is nonzero if any criterion fails.
#include <cstdio>

#include "slag/verify.hpp"

int main() {
  const auto results = slag::verify::verify_all();
  int k = 0, passed = 0;
  for (const auto& r : results) {
    ++k;
    if (r.passed) ++passed;
    std::printf("[%s] %d %s observed=%.6g tol=%.6g\n", r.passed ? "PASS" : "FAIL",
                k, r.name.c_str(), r.observed, r.tolerance);
  }
  std::printf("%s: %d/%d criteria passed\n", passed == k ? "ACCEPTED" : "REJECTED",
              passed, k);
  return passed == k ? 0 : 1;
}
