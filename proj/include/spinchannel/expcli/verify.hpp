// verify.hpp — Oracle cross-check suite run from the command line

#pragma once

#include <string>
#include <vector>

#include "spinchannel/expcli/csv.hpp"

namespace spinchannel::expcli {

struct CheckResult {
    std::string name;
    double residual = 0.0;  // largest deviation seen by the check
    double tolerance = 0.0;
    bool passed() const { return residual < tolerance; }
};

// Engine against RK4, the matrix-form master equation, the full 2^N space,
// closed forms and the Christandl eigensystem. `quick` trims the N and time
// sweeps. Checks run concurrently on up to `threads` workers; the order of the
// returned list is fixed.
std::vector<CheckResult> run_verification(bool quick, unsigned threads = 1);

// Columns: check, max_residual, tolerance, pass (1 or 0).
Table verification_table(const std::vector<CheckResult>& results);

} // namespace spinchannel::expcli
