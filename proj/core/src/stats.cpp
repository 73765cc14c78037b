#include "lexglr/stats.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "lexglr/error.hpp"

namespace lexglr {

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error("paired t-test needs equal-length samples");
    }
    if (a.size() < 2) {
        throw Error("paired t-test needs at least 2 pairs");
    }
    const auto n = a.size();
    std::vector<double> d(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i] - b[i];
        mean += d[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const double x : d) {
        ss += (x - mean) * (x - mean);
    }
    TTestResult result;
    result.df = n - 1;
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) {
        if (mean == 0.0) {
            return result;
        }
        result.t = std::copysign(std::numeric_limits<double>::infinity(), mean);
        result.p_two_sided = 0.0;
        result.saturated = true;
        return result;
    }
    result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
    const boost::math::students_t dist(static_cast<double>(result.df));
    result.p_two_sided = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(result.t)));
    return result;
}

} // namespace lexglr
