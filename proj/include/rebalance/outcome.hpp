#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rebalance/tabular.hpp"

namespace rebalance {

/// Provenance of one row a strategy appended.
struct AddedRow {
    /// Original row the new one was copied or generated from.
    std::size_t seed = 0;
    /// Second original row for interpolated rows (Smote, SmoteR).
    std::optional<std::size_t> partner;
    /// False for exact replicas.
    bool synthetic = false;
};

/**
 * Result of one strategy run.
 *
 * `data` holds the kept original rows in their original order followed by
 * the added rows in generation order, so
 * `data.n_rows() == n - removed.size() + added.size()`.
 */
struct StrategyOutcome {
    Dataset data;
    /// Original indices, ascending.
    std::vector<std::size_t> removed;
    std::vector<AddedRow> added;
    std::vector<std::string> warnings;
};

} // namespace rebalance
