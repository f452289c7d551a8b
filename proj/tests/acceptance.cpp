// One PASS/FAIL line per acceptance criterion; a criterion also fails if it
// takes 60 s or more.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "natdual/corpus.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  bool all = true;
  natdual::corpus::run_acceptance(seed, std::nullopt, [&](const natdual::corpus::CriterionResult& r) {
    bool ok = r.passed && r.seconds < 60.0;
    all = all && ok;
    std::printf("%s %2d %s (%.2fs): %s\n", ok ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  });
  std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
  return all ? 0 : 1;
}
