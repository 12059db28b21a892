#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epwind {

struct SelftestAssertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestResult {
    std::vector<SelftestAssertion> assertions;

    bool passed() const;
    /// nullptr when everything passed.
    const SelftestAssertion* first_failure() const;
};

/// Runs the bundled fixture end to end. Assertions, in order:
/// fixture-spectrum, degeneracy-census, basepoint-ordering, branch-line-census,
/// permutation-matrices, loop-events, loop-product, oracle-agreement.
SelftestResult run_selftest();

/// One "[PASS] name: detail" / "[FAIL] ..." line per assertion.
void print_selftest(std::ostream& out, const SelftestResult& result);

}  // namespace epwind
