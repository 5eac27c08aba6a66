#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cgalp {

/// Seedable generator with platform-independent output.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not, so every conversion to floats and indices is done
/// here by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (both variates are used).
    double normal();

    /// Uniform integer in [0, n), unbiased.
    std::uint64_t index(std::uint64_t n);

    /// k distinct values from [0, n), in draw order (partial Fisher-Yates).
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Derives an independent seed from a base seed and a stream tag.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace cgalp
