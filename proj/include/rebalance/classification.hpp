#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rebalance/distance.hpp"
#include "rebalance/outcome.hpp"
#include "rebalance/targets.hpp"

/**
 * @file classification.hpp
 *
 * @brief Resampling strategies for a nominal target.
 *
 * Every strategy takes the dataset by reference and returns a new one; the
 * seed fully determines the random choices.
 */

namespace rebalance {

/// Which classes a neighbor-based strategy treats as its focus.
struct ClassSelector {
    enum class Kind { All, Smaller, Listed };

    Kind kind = Kind::All;
    std::vector<std::string> labels;

    static ClassSelector all() { return {Kind::All, {}}; }
    /// Classes with fewer than N / C rows.
    static ClassSelector smaller() { return {Kind::Smaller, {}}; }
    static ClassSelector listed(std::vector<std::string> labels) { return {Kind::Listed, std::move(labels)}; }

    /// "all", "smaller" or a comma-separated label list.
    static ClassSelector parse(std::string_view text);

    /// Labels selected on `counts`; throws on labels that do not occur.
    std::vector<std::string> resolve(const ClassCounts& counts) const;
};

enum class TomekRemove { Majority, Both };
enum class OssStart { CNN, Tomek };

/// Which side NCL scans when collecting neighbors to clean.
enum class NclScan {
    /// Neighbors of each focus-class row; qualifying other-class neighbors are removed.
    FocusNeighbors,
    /// Each other-class row is removed if one of its own neighbors is a focus-class row.
    OwnNeighbors,
};

StrategyOutcome rand_under(const Dataset& ds, const ClassPercSpec& spec, bool repl, std::uint64_t seed);
StrategyOutcome rand_over(const Dataset& ds, const ClassPercSpec& spec, bool repl, std::uint64_t seed);
StrategyOutcome imp_samp(const Dataset& ds, const ClassPercSpec& spec, std::uint64_t seed);

/**
 * Removes rows that form Tomek links: cross-class pairs of mutual nearest
 * neighbors. A link with one endpoint in `cl` loses only that endpoint; a link
 * with both loses both (Both) or the one from the more populated class (Majority,
 * both when the populations tie).
 */
StrategyOutcome tomek(const Dataset& ds, const Metric& metric, const ClassSelector& cl = ClassSelector::all(),
                      TomekRemove rem = TomekRemove::Both);

struct CnnResult {
    StrategyOutcome outcome;
    std::vector<std::string> important;
    std::vector<std::string> unimportant;
};

/**
 * Condensed nearest neighbor. Starts from every row of the important classes
 * plus one random row of each other class, then adds rows misclassified by
 * 1-NN over the current set until every original row is classified correctly.
 */
CnnResult cnn(const Dataset& ds, const Metric& metric, const ClassSelector& cl, std::uint64_t seed);

/// Tomek links (removing both endpoints) and CNN in the order given by `start`.
StrategyOutcome oss(const Dataset& ds, const Metric& metric, const ClassSelector& cl, OssStart start, std::uint64_t seed);

/// Edited nearest neighbor: drops rows of `cl` that disagree with at least
/// half (rounded up) of their k nearest neighbors.
StrategyOutcome enn(const Dataset& ds, const Metric& metric, std::size_t k, const ClassSelector& cl, std::uint64_t seed);

/// Neighborhood cleaning rule with the focus classes given by `cl`.
StrategyOutcome ncl(const Dataset& ds, const Metric& metric, std::size_t k, const ClassSelector& cl, std::uint64_t seed,
                    NclScan scan = NclScan::FocusNeighbors);

StrategyOutcome gauss_noise(const Dataset& ds, const ClassPercSpec& spec, double pert, bool repl, std::uint64_t seed);

StrategyOutcome smote(const Dataset& ds, const ClassPercSpec& spec, std::size_t k, const Metric& metric, bool repl,
                      std::uint64_t seed);

} // namespace rebalance
