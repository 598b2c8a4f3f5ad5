#pragma once

// Self-consistency suite: numeric propagators against the second-order
// expansions, the cyclic and parallel-transport conditions, zero-noise
// exactness and the analytic orderings.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "geogate/evolution.hpp"
#include "geogate/pulses.hpp"

namespace geogate {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;  // worst observed quantity
    double limit = 0.0;
    std::string detail;
    // Failed, but in exactly the characterised way described in detail.
    bool known_deviation = false;
};

struct CheckReport {
    std::vector<CheckResult> results;

    bool all_passed() const;
    // True when every failure is a known deviation.
    bool no_unexpected_failures() const;
};

struct CheckOptions {
    // Replaceable so a corrupted schedule can be shown to fail.
    std::function<PulseSequence(const GateParams&, bool)> optimized_builder = optimized_sequence;
    int grid = 5;  // points per axis for the geometric-condition grid
};

CheckReport run_checks(const CheckOptions& options = {});

// Individual groups, also used by the acceptance binary.
CheckResult check_taylor(GateFamily family, ErrorKind kind, const CheckOptions& options = {});
CheckResult check_taylor_order(GateFamily family, ErrorKind kind, const CheckOptions& options = {});
CheckResult check_cyclic(GateFamily family, int grid, const CheckOptions& options = {});
CheckResult check_parallel_transport(GateFamily family, int grid, const CheckOptions& options = {});
CheckResult check_zero_noise(GateFamily family, int count, std::uint64_t seed,
                             const CheckOptions& options = {});
CheckResult check_two_pi_qualitative();
CheckResult check_analytic_ordering();

}  // namespace geogate
