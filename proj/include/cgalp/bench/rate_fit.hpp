#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cgalp::bench {

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::int64_t k_lo = 0;
    std::int64_t k_hi = 0;
    std::int64_t points_used = 0;
    /// Rows inside [k_lo, k_hi] skipped because the value was not positive
    /// (or not finite).
    std::int64_t points_excluded = 0;
};

class RateFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Least-squares line through (log k, log value) for rows with k in
/// [k_lo, k_hi]. Requires k_lo >= 1 and at least 10 usable rows.
RateFit fit_rate(const std::vector<std::int64_t>& k, const std::vector<double>& value, std::int64_t k_lo,
                 std::int64_t k_hi);

}  // namespace cgalp::bench
