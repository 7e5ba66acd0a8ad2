// Acceptance gate: runs every verification criterion and prints one
// pass/fail line per criterion. Exit status is nonzero when any fails.

#include <cstdio>
#include <cstdlib>

#include "fkwell/verify.hpp"

int main() {
    std::uint64_t seed = 0;
    if (const char* env = std::getenv("FW_SEED"))
        seed = std::strtoull(env, nullptr, 10);
    const auto results = fkwell::run_verify("all", seed, /*workers=*/2);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-24s %7.1fs  %s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}
