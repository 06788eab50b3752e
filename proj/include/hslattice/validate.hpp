#pragma once

#include <string>
#include <vector>

namespace hsl {

enum class Suite { fast, full };

struct CheckResult {
    std::string name;
    bool pass = false;
    double slack = 0.0;  // tolerance minus worst observed error (negative = failed)
    std::string detail;
};

/// Runs the named invariant checks of all modules. `fast` keeps everything at
/// small n; `full` adds the n = 800 convergence checks and wider grids.
/// inject_fault deliberately corrupts a distribution so the normalisation
/// check must fail (negative control for the harness itself).
std::vector<CheckResult> run_validation(Suite suite, bool inject_fault = false);

}  // namespace hsl
