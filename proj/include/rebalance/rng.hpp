#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rebalance {

/**
 * Seedable random source shared by every strategy.
 *
 * The engine is `std::mt19937_64`, whose output sequence is fixed by the
 * standard. All variates are derived here from its raw 64-bit output rather
 * than through `<random>` distributions, whose algorithms are
 * implementation-defined, so a seed yields the same data on every platform.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n); n must be positive.
    std::size_t index(std::size_t n);

    /// Box-Muller transform of two uniforms.
    double normal(double mean = 0.0, double sd = 1.0);

    /// Gamma with the given shape and scale (Marsaglia-Tsang).
    double gamma(double shape, double scale = 1.0);

    bool coin() { return (engine_() >> 63) != 0; }

    /// k distinct indices from [0, n), in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

    /// k indices from [0, n), drawn independently.
    std::vector<std::size_t> sample_with_replacement(std::size_t n, std::size_t k);

    /// k indices drawn independently with probability proportional to `weights`.
    /// Falls back to uniform draws when every weight is zero.
    std::vector<std::size_t> weighted_with_replacement(std::span<const double> weights, std::size_t k);

    /// k distinct indices, each successive draw proportional to the remaining weights.
    /// Zero-weight items are only drawn once every positive-weight item is exhausted.
    std::vector<std::size_t> weighted_without_replacement(std::span<const double> weights, std::size_t k);

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace rebalance
