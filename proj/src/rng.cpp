#include "rebalance/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rebalance {

std::size_t Rng::index(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("Rng::index needs a positive range");
    }
    // rejection sampling on the top of the 64-bit range keeps draws unbiased
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return static_cast<std::size_t>(x % range);
}

double Rng::normal(double mean, double sd) {
    double u1 = 1.0 - uniform(); // (0, 1]
    double u2 = uniform();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + sd * z;
}

double Rng::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw std::invalid_argument("gamma needs positive shape and scale");
    }
    if (shape < 1.0) {
        // boost: G(a) = G(a + 1) * U^(1/a)
        double g = gamma(shape + 1.0, 1.0);
        double u = 1.0 - uniform();
        return scale * g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) {
            continue;
        }
        v = v * v * v;
        double u = 1.0 - uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
            return scale * d * v;
        }
    }
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    if (k > n) {
        throw std::invalid_argument("cannot draw more distinct items than available");
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + index(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

std::vector<std::size_t> Rng::sample_with_replacement(std::size_t n, std::size_t k) {
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(index(n));
    }
    return out;
}

std::vector<std::size_t> Rng::weighted_with_replacement(std::span<const double> weights, std::size_t k) {
    const std::size_t n = weights.size();
    if (k == 0) {
        return {};
    }
    if (n == 0) {
        throw std::invalid_argument("cannot draw from an empty population");
    }
    std::vector<double> cumulative(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += std::max(weights[i], 0.0);
        cumulative[i] = total;
    }
    if (!(total > 0.0)) {
        return sample_with_replacement(n, k);
    }

    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        double target = uniform() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
        auto pos = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(n - 1)));
        // skip zero-weight items that share the cumulative value
        while (pos < n && weights[pos] <= 0.0) {
            ++pos;
        }
        out.push_back(std::min(pos, n - 1));
    }
    return out;
}

std::vector<std::size_t> Rng::weighted_without_replacement(std::span<const double> weights, std::size_t k) {
    const std::size_t n = weights.size();
    if (k > n) {
        throw std::invalid_argument("cannot draw more distinct items than available");
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::max(weights[i], 0.0);
    }
    std::vector<bool> taken(n, false);
    std::vector<std::size_t> out;
    out.reserve(k);

    for (std::size_t draw = 0; draw < k; ++draw) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!taken[i]) {
                total += w[i];
            }
        }

        std::size_t chosen = n;
        if (total > 0.0) {
            double target = uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (taken[i] || w[i] <= 0.0) {
                    continue;
                }
                acc += w[i];
                chosen = i;
                if (target < acc) {
                    break;
                }
            }
        } else {
            std::size_t remaining = n - out.size();
            std::size_t pick = index(remaining);
            for (std::size_t i = 0; i < n; ++i) {
                if (taken[i]) {
                    continue;
                }
                if (pick == 0) {
                    chosen = i;
                    break;
                }
                --pick;
            }
        }
        taken[chosen] = true;
        out.push_back(chosen);
    }
    return out;
}

} // namespace rebalance
