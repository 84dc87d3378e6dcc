#include "rebalance/regression.hpp"

#include <algorithm>
#include <cmath>

#include "rebalance/parallel.hpp"
#include "sampling.hpp"

namespace rebalance {

using detail::Plan;

namespace {

void require_numeric(const Dataset& ds) {
    if (ds.has_nominal_target()) {
        throw DataError("regression strategies need a numeric target; '" + ds.target_name() + "' is nominal");
    }
    if (ds.n_rows() == 0) {
        throw DataError("the dataset has no rows");
    }
}

std::vector<Bump> bumps_of(const Dataset& ds, const RelevanceFunction& fn, double thr_rel) {
    require_numeric(ds);
    return find_bumps(ds, fn, thr_rel);
}

RegressOutcome finish(Plan&& plan, std::vector<Bump> bumps, std::size_t n_rows) {
    std::vector<std::size_t> owner(n_rows, 0);
    for (std::size_t b = 0; b < bumps.size(); ++b) {
        for (auto r : bumps[b].rows) owner[r] = b;
    }
    RegressOutcome out;
    out.outcome = std::move(plan).finish();
    out.after.assign(bumps.size(), 0);
    if (!bumps.empty()) {
        std::vector<bool> gone(n_rows, false);
        for (auto r : out.outcome.removed) gone[r] = true;
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (!gone[r]) ++out.after[owner[r]];
        }
        for (const auto& a : out.outcome.added) ++out.after[owner[a.seed]];
    }
    out.bumps = std::move(bumps);
    return out;
}

std::string bump_name(const Bump& b) {
    return std::string(b.kind == BumpKind::Rare ? "Rare" : "Normal") + " bump [" + format_number(b.lo) + ", " +
           format_number(b.hi) + "]";
}

} // namespace

RegressOutcome rand_under_r(const Dataset& ds, const RelevanceFunction& fn, double thr_rel, const BumpPercSpec& spec,
                            bool repl, std::uint64_t seed) {
    auto bumps = bumps_of(ds, fn, thr_rel);
    const auto targets = resolve_bumps_under(BumpSizes::of(bumps), spec);
    Rng rng(seed);
    Plan plan(ds);
    for (std::size_t b = 0; b < bumps.size(); ++b) {
        if (bumps[b].kind == BumpKind::Normal) {
            detail::shrink(plan, bumps[b].rows, targets[b], repl, rng);
        }
    }
    return finish(std::move(plan), std::move(bumps), ds.n_rows());
}

RegressOutcome rand_over_r(const Dataset& ds, const RelevanceFunction& fn, double thr_rel, const BumpPercSpec& spec,
                           std::uint64_t seed) {
    auto bumps = bumps_of(ds, fn, thr_rel);
    const auto targets = resolve_bumps_over(BumpSizes::of(bumps), spec);
    Rng rng(seed);
    Plan plan(ds);
    for (std::size_t b = 0; b < bumps.size(); ++b) {
        if (bumps[b].kind == BumpKind::Rare) {
            detail::add_replicas(plan, bumps[b].rows, targets[b] - bumps[b].rows.size(), rng);
        }
    }
    return finish(std::move(plan), std::move(bumps), ds.n_rows());
}

RegressOutcome gauss_noise_r(const Dataset& ds, const RelevanceFunction& fn, double thr_rel, const BumpPercSpec& spec,
                             double pert, bool repl, std::uint64_t seed) {
    if (!std::isfinite(pert) || pert < 0.0) {
        throw DataError("perturbation pert must be finite and non-negative");
    }
    auto bumps = bumps_of(ds, fn, thr_rel);
    const auto targets = resolve_bumps_mixed(BumpSizes::of(bumps), spec);
    Rng rng(seed);
    Plan plan(ds);
    for (std::size_t b = 0; b < bumps.size(); ++b) {
        const auto& rows = bumps[b].rows;
        if (targets[b] <= rows.size()) {
            detail::shrink(plan, rows, targets[b], repl, rng);
            continue;
        }
        if (rows.size() == 1) {
            plan.warn(bump_name(bumps[b]) + " has a single row; its new rows are exact replicas");
        }
        const auto stats = detail::group_stats(ds, rows);
        for (auto s : detail::spread_seeds(rows, targets[b] - rows.size(), rng)) {
            plan.synthesize(s, std::nullopt, detail::gaussian_variant(ds, s, stats, pert, true, rng));
        }
    }
    return finish(std::move(plan), std::move(bumps), ds.n_rows());
}

RegressOutcome smoter(const Dataset& ds, const RelevanceFunction& fn, double thr_rel, const BumpPercSpec& spec, std::size_t k,
                      const Metric& metric, bool repl, std::uint64_t seed) {
    if (k == 0) {
        throw DataError("number of neighbors k must be at least 1");
    }
    auto bumps = bumps_of(ds, fn, thr_rel);
    const auto targets = resolve_bumps_scaled(BumpSizes::of(bumps), spec);
    NeighborIndex idx(ds, metric);
    const auto y = ds.target_values();
    const std::size_t tcol = ds.target_index();
    Rng rng(seed);
    Plan plan(ds);

    for (std::size_t b = 0; b < bumps.size(); ++b) {
        const auto& rows = bumps[b].rows;
        if (targets[b] <= rows.size()) {
            detail::shrink(plan, rows, targets[b], repl, rng);
            continue;
        }
        if (rows.size() == 1) {
            plan.warn(bump_name(bumps[b]) + " has a single row and no neighbor to interpolate with; it was replicated");
            for (std::size_t i = rows.size(); i < targets[b]; ++i) plan.replicate(rows.front());
            continue;
        }

        const std::size_t kk = std::min(k, rows.size() - 1);
        std::vector<std::vector<std::size_t>> neighbors(rows.size());
        parallel_for(rows.size(), [&](std::size_t i) {
            std::vector<std::size_t> others;
            others.reserve(rows.size() - 1);
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (j != i) others.push_back(rows[j]);
            }
            neighbors[i] = idx.knn(rows[i], kk, others);
        });
        std::vector<std::size_t> position(ds.n_rows(), 0);
        for (std::size_t i = 0; i < rows.size(); ++i) position[rows[i]] = i;

        for (auto s : detail::spread_seeds(rows, targets[b] - rows.size(), rng)) {
            const auto& cand = neighbors[position[s]];
            const std::size_t partner = cand[rng.index(cand.size())];
            const double u = rng.uniform();
            Record rec = detail::interpolate(ds, s, partner, u, rng);
            const auto features = idx.features().extract(rec);
            const double d1 = idx.distance(features.view(), s);
            const double d2 = idx.distance(features.view(), partner);
            rec[tcol].number = d1 + d2 > 0.0 ? (d2 * y[s] + d1 * y[partner]) / (d1 + d2) : 0.5 * (y[s] + y[partner]);
            plan.synthesize(s, partner, std::move(rec));
        }
    }
    return finish(std::move(plan), std::move(bumps), ds.n_rows());
}

RegressOutcome imp_samp_r(const Dataset& ds, const RelevanceFunction& fn, const ImpSampParams& params, std::uint64_t seed) {
    require_numeric(ds);
    const auto y = ds.target_values();
    std::vector<double> phi(ds.n_rows());
    for (std::size_t r = 0; r < ds.n_rows(); ++r) phi[r] = fn(y[r]);
    Rng rng(seed);
    Plan plan(ds);

    if (params.mode == ImpSampParams::Mode::Intensities) {
        const double u = params.under;
        const double o = params.over;
        if (!(u >= 0.0 && u <= 1.0) || !(o >= 0.0 && o <= 1.0)) {
            throw DataError("importance sampling intensities U and O must lie in [0, 1]");
        }
        double mass = 0.0;
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            mass += phi[r];
            if (rng.uniform() < u * (1.0 - phi[r])) plan.remove(r);
        }
        const auto count = static_cast<std::size_t>(std::floor(o * mass + 1e-9));
        std::vector<std::size_t> survivors;
        std::vector<double> weights;
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            if (!plan.is_removed(r) && phi[r] > 0.0) {
                survivors.push_back(r);
                weights.push_back(phi[r]);
            }
        }
        if (count > 0 && survivors.empty()) {
            plan.warn("no surviving row has positive relevance; no replicas were added");
        } else {
            for (auto i : rng.weighted_with_replacement(weights, count)) plan.replicate(survivors[i]);
        }
        return finish(std::move(plan), {}, ds.n_rows());
    }

    auto bumps = find_bumps(ds, fn, params.thr_rel);
    const auto targets = resolve_bumps_mixed(BumpSizes::of(bumps), params.spec);
    for (std::size_t b = 0; b < bumps.size(); ++b) {
        const auto& rows = bumps[b].rows;
        std::vector<double> w;
        w.reserve(rows.size());
        if (targets[b] < rows.size()) {
            for (auto r : rows) w.push_back(1.0 - phi[r]);
            for (auto i : rng.weighted_without_replacement(w, rows.size() - targets[b])) plan.remove(rows[i]);
        } else if (targets[b] > rows.size()) {
            for (auto r : rows) w.push_back(phi[r]);
            for (auto i : rng.weighted_with_replacement(w, targets[b] - rows.size())) plan.replicate(rows[i]);
        }
    }
    return finish(std::move(plan), std::move(bumps), ds.n_rows());
}

} // namespace rebalance
