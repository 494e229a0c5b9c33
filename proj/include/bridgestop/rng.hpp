#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace bridgestop {

namespace detail {

// SplitMix64 finalizer; full-period mixing of a 64-bit counter.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/**
 * One random stream out of a splittable family keyed by (master seed,
 * stream index). Streams with distinct indices are statistically
 * independent, so paths can be generated in any order or in parallel
 * and still reproduce bit-identical results for a given master seed.
 */
class SplitStream {
  public:
    SplitStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : gen_(detail::splitmix64(detail::splitmix64(master_seed) ^
                                  detail::splitmix64(stream_index + 0x5851F42D4C957F2DULL))) {}

    /// Uniform draw in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw (Marsaglia polar method, spare cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

  private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bridgestop
