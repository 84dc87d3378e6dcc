#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rebalance/relevance.hpp"
#include "rebalance/tabular.hpp"

/**
 * @file targets.hpp
 *
 * @brief Turning resampling percentages into per-class and per-bump row counts.
 *
 * Every strategy first resolves its percentage specification against the
 * current counts, then samples until each group reaches its target. The
 * rounding rules differ between strategies on purpose: they are the ones that
 * reproduce the published count tables.
 */

namespace rebalance {

enum class PercMode { Explicit, Balance, Extreme };

/// Percentages keyed by class label, or one of the automatic modes.
struct ClassPercSpec {
    PercMode mode = PercMode::Balance;
    std::map<std::string, double> perc;

    static ClassPercSpec balance() { return {PercMode::Balance, {}}; }
    static ClassPercSpec extreme() { return {PercMode::Extreme, {}}; }
    static ClassPercSpec explicit_map(std::map<std::string, double> perc) { return {PercMode::Explicit, std::move(perc)}; }

    /// "balance", "extreme" or "label=perc,label=perc".
    static ClassPercSpec parse(std::string_view text);
};

/// Percentages listed per bump (in target order), or one of the automatic modes.
struct BumpPercSpec {
    PercMode mode = PercMode::Balance;
    std::vector<double> perc;

    static BumpPercSpec balance() { return {PercMode::Balance, {}}; }
    static BumpPercSpec extreme() { return {PercMode::Extreme, {}}; }
    static BumpPercSpec list(std::vector<double> perc) { return {PercMode::Explicit, std::move(perc)}; }

    /// "balance", "extreme" or "p1,p2,...".
    static BumpPercSpec parse(std::string_view text);
};

/// Random under-sampling: explicit trunc(p n) with p <= 1; Balance lowers every
/// class to the smallest; Extreme gives class i trunc(m^2 / n_i).
ClassCounts resolve_under(const ClassCounts& counts, const ClassPercSpec& spec);

/// Random over-sampling: explicit trunc(p n) with p >= 1; Balance raises every
/// class to the largest; Extreme gives class i round(M^2 / n_i).
ClassCounts resolve_over(const ClassCounts& counts, const ClassPercSpec& spec);

/// Importance sampling: explicit trunc(p n) in either direction; Balance
/// trunc(N / C) per class; Extreme inverts class frequencies.
ClassCounts resolve_importance(const ClassCounts& counts, const ClassPercSpec& spec);

/// GaussNoise and Smote: like resolve_importance except Balance, where the
/// first class gets trunc(N / C) and the later ones one less when C does not divide N.
ClassCounts resolve_synthetic(const ClassCounts& counts, const ClassPercSpec& spec);

/// round(N (1 / n_i) / sum_j (1 / n_j)) for every group.
std::vector<std::size_t> inverse_frequency(const std::vector<std::size_t>& sizes);

/// Bump sizes paired with their kinds, in target order.
struct BumpSizes {
    std::vector<BumpKind> kinds;
    std::vector<std::size_t> sizes;

    static BumpSizes of(const std::vector<Bump>& bumps);
    std::size_t count(BumpKind kind) const;
    std::size_t total(BumpKind kind) const;
};

/// Under-sample Normal bumps (one percentage per Normal bump); Rare bumps stay.
/// Balance: each Normal bump gets trunc(R / #Normal); Extreme: trunc(R^2 / n_j);
/// automatic targets never exceed the bump's current size.
std::vector<std::size_t> resolve_bumps_under(const BumpSizes& bumps, const BumpPercSpec& spec);

/// Over-sample Rare bumps additively (one percentage per Rare bump): n + trunc(p n).
/// Balance adds the largest Normal size M; Extreme adds trunc(M^2 / n_j).
std::vector<std::size_t> resolve_bumps_over(const BumpSizes& bumps, const BumpPercSpec& spec);

/// One percentage per bump: Normal bumps shrink to trunc(p n) (p <= 1), Rare
/// bumps grow to n + trunc(p n). Balance: trunc(N / B) each; Extreme inverts.
std::vector<std::size_t> resolve_bumps_mixed(const BumpSizes& bumps, const BumpPercSpec& spec);

/// One percentage per bump, multiplicative: trunc(p n) for every bump.
/// Balance: trunc(N / B) each; Extreme inverts.
std::vector<std::size_t> resolve_bumps_scaled(const BumpSizes& bumps, const BumpPercSpec& spec);

} // namespace rebalance
