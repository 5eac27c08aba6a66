#include "cgalp/bench/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cgalp::bench {

RateFit fit_rate(const std::vector<std::int64_t>& k, const std::vector<double>& value, std::int64_t k_lo,
                 std::int64_t k_hi) {
    if (k.size() != value.size()) throw RateFitError("fit_rate: column lengths differ");
    if (k_lo < 1 || k_hi < k_lo) throw RateFitError("fit_rate: need 1 <= k_lo <= k_hi");

    RateFit fit;
    fit.k_lo = k_lo;
    fit.k_hi = k_hi;
    // Accumulate in two passes around the means for a stable fit.
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] < k_lo || k[i] > k_hi) continue;
        if (!(value[i] > 0.0) || !std::isfinite(value[i])) {
            ++fit.points_excluded;
            continue;
        }
        lx.push_back(std::log(static_cast<double>(k[i])));
        ly.push_back(std::log(value[i]));
    }
    fit.points_used = static_cast<std::int64_t>(lx.size());
    if (lx.size() < 10)
        throw RateFitError("fit_rate: only " + std::to_string(lx.size()) + " usable points in [" +
                           std::to_string(k_lo) + ", " + std::to_string(k_hi) + "]");

    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mx;
        const double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw RateFitError("fit_rate: all usable points share one k");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return fit;
}

}  // namespace cgalp::bench
