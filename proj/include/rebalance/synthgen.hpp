#pragma once

#include <cstddef>
#include <cstdint>

#include "rebalance/tabular.hpp"

/**
 * @file synthgen.hpp
 *
 * @brief Seeded generators for two small imbalanced benchmark datasets.
 *
 * ImbC: numeric X1 ~ N(0, sd 4), nominal X2 in {cat, fish, dog} with exact
 * 30/30/40% frequencies, target Class in {normal, rare1, rare2}.
 *
 * ImbR: 95% of rows are a bivariate normal cloud around (10, 10) with target
 * Gamma(0.5, 1) + 10; the other 5% lie on a noisy circle of radius 9 around
 * the same point with target Gamma(1, 1) + 20. Target column Tgt.
 */

namespace rebalance {

struct GenParams {
    std::size_t n_rows = 1000;
    std::uint64_t seed = 0;
};

Dataset gen_imbc(const GenParams& params);
Dataset gen_imbr(const GenParams& params);

} // namespace rebalance
