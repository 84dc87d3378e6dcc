#pragma once

#include <cstdint>
#include <vector>

#include "rebalance/distance.hpp"
#include "rebalance/outcome.hpp"
#include "rebalance/relevance.hpp"
#include "rebalance/targets.hpp"

/**
 * @file regression.hpp
 *
 * @brief Resampling strategies for a numeric target, driven by relevance bumps.
 */

namespace rebalance {

struct RegressOutcome {
    StrategyOutcome outcome;
    /// Bumps of the input data; empty for the threshold-free importance sampling mode.
    std::vector<Bump> bumps;
    /// Rows per bump in the output: kept rows of the bump plus rows added from its seeds.
    std::vector<std::size_t> after;
};

/// Importance sampling is either bump-based (threshold and percentages) or
/// driven directly by relevance as removal and replication intensities.
struct ImpSampParams {
    enum class Mode { Bumps, Intensities };

    Mode mode = Mode::Bumps;
    double thr_rel = 0.5;
    BumpPercSpec spec = BumpPercSpec::balance();
    /// Removal intensity U and replication intensity O, both in [0, 1].
    double under = 0.0;
    double over = 0.0;

    static ImpSampParams bumps(double thr_rel, BumpPercSpec spec) { return {Mode::Bumps, thr_rel, std::move(spec), 0.0, 0.0}; }
    static ImpSampParams intensities(double under, double over) {
        return {Mode::Intensities, 0.5, BumpPercSpec::balance(), under, over};
    }
};

/// Shrinks Normal bumps; Rare bumps are untouched.
RegressOutcome rand_under_r(const Dataset& ds, const RelevanceFunction& fn, double thr_rel, const BumpPercSpec& spec,
                            bool repl, std::uint64_t seed);

/// Adds replicas to Rare bumps; Normal bumps are untouched.
RegressOutcome rand_over_r(const Dataset& ds, const RelevanceFunction& fn, double thr_rel, const BumpPercSpec& spec,
                           std::uint64_t seed);

/// Shrinks or grows every bump; new rows perturb features and target with bump-local noise.
RegressOutcome gauss_noise_r(const Dataset& ds, const RelevanceFunction& fn, double thr_rel, const BumpPercSpec& spec,
                             double pert, bool repl, std::uint64_t seed);

/**
 * Shrinks or grows every bump; new rows interpolate a seed with one of its k
 * nearest neighbors from the same bump, and take a target weighted by the
 * inverse distances to the two.
 */
RegressOutcome smoter(const Dataset& ds, const RelevanceFunction& fn, double thr_rel, const BumpPercSpec& spec, std::size_t k,
                      const Metric& metric, bool repl, std::uint64_t seed);

RegressOutcome imp_samp_r(const Dataset& ds, const RelevanceFunction& fn, const ImpSampParams& params, std::uint64_t seed);

} // namespace rebalance
