#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fkwell {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Names of the verification suites, in canonical order.
const std::vector<std::string>& verify_suite_names();

/// Runs one named suite ("all" runs every suite) and returns one result per
/// criterion. `workers` sizes the thread pool; results are worker-invariant.
std::vector<CriterionResult> run_verify(const std::string& suite,
                                        std::uint64_t seed, int workers);

}  // namespace fkwell
