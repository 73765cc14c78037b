#pragma once

#include <cstddef>
#include <span>

namespace lexglr {

struct TTestResult {
    double t = 0.0;
    std::size_t df = 0;
    double p_two_sided = 1.0;
    /// The differences have zero variance but a nonzero mean: t is ±infinity, p is 0.
    bool saturated = false;
};

/// Paired Student t-test on a - b. Throws Error for unequal lengths or fewer than 2 pairs.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

} // namespace lexglr
