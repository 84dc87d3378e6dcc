#pragma once

// Building blocks shared by the classification and regression strategies.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rebalance/distance.hpp"
#include "rebalance/outcome.hpp"
#include "rebalance/rng.hpp"
#include "rebalance/tabular.hpp"

namespace rebalance::detail {

/// Accumulates removals and additions against one source dataset.
class Plan {
public:
    explicit Plan(const Dataset& ds) : ds_(ds), removed_(ds.n_rows(), false) {}

    const Dataset& source() const { return ds_; }

    void remove(std::size_t row) { removed_.at(row) = true; }
    void restore(std::size_t row) { removed_.at(row) = false; }
    bool is_removed(std::size_t row) const { return removed_[row]; }

    void replicate(std::size_t seed);
    void synthesize(std::size_t seed, std::optional<std::size_t> partner, Record record);
    void warn(std::string message);

    StrategyOutcome finish() &&;

private:
    const Dataset& ds_;
    std::vector<bool> removed_;
    std::vector<AddedRow> added_;
    std::vector<std::optional<Record>> records_;
    std::vector<std::string> warnings_;
};

/**
 * Reduces `rows` to `target` rows. Without replacement a uniform subset is
 * kept. With replacement `target` rows are drawn independently: rows never
 * drawn are removed and repeated draws become replicas.
 */
void shrink(Plan& plan, std::span<const std::size_t> rows, std::size_t target, bool repl, Rng& rng);

/// Appends `count` replicas drawn uniformly with replacement.
void add_replicas(Plan& plan, std::span<const std::size_t> rows, std::size_t count, Rng& rng);

/// Appends `count` replicas that cycle through the rows: every row once
/// (in random order) before any row twice.
void add_replicas_cycling(Plan& plan, std::span<const std::size_t> rows, std::size_t count, Rng& rng);

/// `count` seed rows spread evenly: each row floor(count / n) times, plus a
/// random distinct subset for the remainder.
std::vector<std::size_t> spread_seeds(std::span<const std::size_t> rows, std::size_t count, Rng& rng);

/// Per-column statistics of a group of rows (sample sd for numeric columns,
/// label frequencies for nominal ones), computed over non-Missing cells.
struct GroupStats {
    std::vector<double> sd;
    std::vector<std::vector<double>> label_weights;
};

GroupStats group_stats(const Dataset& ds, std::span<const std::size_t> rows);

/// Copy of `seed` with Gaussian noise (sd pert * group sd) on numeric features
/// and nominal features redrawn by group frequency. The target is perturbed
/// only when `include_target` is set.
Record gaussian_variant(const Dataset& ds, std::size_t seed, const GroupStats& stats, double pert, bool include_target,
                        Rng& rng);

/// Seed + u (neighbor - seed) on numeric features, a coin flip between the two
/// on nominal features. The target cell is left as the seed's.
Record interpolate(const Dataset& ds, std::size_t seed, std::size_t neighbor, double u, Rng& rng);

/// Rows of `ds` grouped by target code, indexed by code.
std::vector<std::vector<std::size_t>> rows_by_class(const Dataset& ds);

/// Row indices whose target label is `label`.
std::vector<std::size_t> rows_of(const Dataset& ds, std::string_view label);

} // namespace rebalance::detail
