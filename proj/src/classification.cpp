#include "rebalance/classification.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rebalance/parallel.hpp"
#include "sampling.hpp"

namespace rebalance {

using detail::Plan;

namespace {

constexpr const char* tomek_none = "TomekClassif found no examples to remove!";
constexpr const char* enn_none = "ENNClassif found no examples to remove!";

void require_nominal(const Dataset& ds) {
    if (!ds.has_nominal_target()) {
        throw DataError("classification strategies need a nominal target; '" + ds.target_name() + "' is numeric");
    }
}

std::vector<bool> code_mask(const Dataset& ds, const std::vector<std::string>& labels) {
    std::vector<bool> mask(ds.target().levels.size(), false);
    for (const auto& l : labels) {
        auto code = ds.target().code_of(l);
        if (code != missing_code) mask[static_cast<std::size_t>(code)] = true;
    }
    return mask;
}

void check_k(std::size_t k, std::size_t n) {
    if (k == 0) {
        throw DataError("number of neighbors k must be at least 1");
    }
    if (k >= n) {
        throw DataError("number of neighbors k = " + std::to_string(k) + " needs more than " + std::to_string(k) +
                        " rows, the data has " + std::to_string(n));
    }
}

/// Neighbors of every row in `rows`, searched among the other rows of `rows`.
std::vector<std::vector<std::size_t>> group_neighbors(const NeighborIndex& idx, const std::vector<std::size_t>& rows,
                                                      std::size_t k) {
    std::vector<std::vector<std::size_t>> out(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        std::vector<std::size_t> others;
        others.reserve(rows.size() - 1);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (j != i) others.push_back(rows[j]);
        }
        out[i] = idx.knn(rows[i], k, others);
    });
    return out;
}

/// Runs `second` on the output of a removal-only `first` and expresses the
/// combined removals in the original indexing.
StrategyOutcome chain(StrategyOutcome first, StrategyOutcome second, std::size_t n_original) {
    std::vector<bool> gone(n_original, false);
    for (auto r : first.removed) gone[r] = true;
    std::vector<std::size_t> kept;
    for (std::size_t r = 0; r < n_original; ++r) {
        if (!gone[r]) kept.push_back(r);
    }
    for (auto r : second.removed) gone[kept[r]] = true;

    StrategyOutcome out;
    out.data = std::move(second.data);
    for (std::size_t r = 0; r < n_original; ++r) {
        if (gone[r]) out.removed.push_back(r);
    }
    out.warnings = std::move(first.warnings);
    out.warnings.insert(out.warnings.end(), second.warnings.begin(), second.warnings.end());
    return out;
}

} // namespace

ClassSelector ClassSelector::parse(std::string_view text) {
    if (text == "all") return all();
    if (text == "smaller") return smaller();
    std::vector<std::string> labels;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(',', start);
        auto item = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        if (item.empty()) {
            throw DataError("empty class label in '" + std::string(text) + "'");
        }
        labels.emplace_back(item);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return listed(std::move(labels));
}

std::vector<std::string> ClassSelector::resolve(const ClassCounts& counts) const {
    std::vector<std::string> out;
    switch (kind) {
    case Kind::All:
        for (const auto& [label, n] : counts) out.push_back(label);
        break;
    case Kind::Smaller: {
        std::size_t total = 0;
        for (const auto& [label, n] : counts) total += n;
        for (const auto& [label, n] : counts) {
            if (n * counts.size() < total) out.push_back(label);
        }
        break;
    }
    case Kind::Listed:
        for (const auto& l : labels) {
            if (!counts.contains(l)) {
                throw DataError("class '" + l + "' does not occur in the target");
            }
            if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
        }
        std::sort(out.begin(), out.end());
        break;
    }
    return out;
}

StrategyOutcome rand_under(const Dataset& ds, const ClassPercSpec& spec, bool repl, std::uint64_t seed) {
    require_nominal(ds);
    const auto targets = resolve_under(class_counts(ds), spec);
    Rng rng(seed);
    Plan plan(ds);
    for (const auto& [label, t] : targets) {
        auto rows = detail::rows_of(ds, label);
        detail::shrink(plan, rows, t, repl, rng);
    }
    return std::move(plan).finish();
}

StrategyOutcome rand_over(const Dataset& ds, const ClassPercSpec& spec, bool repl, std::uint64_t seed) {
    require_nominal(ds);
    const auto targets = resolve_over(class_counts(ds), spec);
    Rng rng(seed);
    Plan plan(ds);
    for (const auto& [label, t] : targets) {
        auto rows = detail::rows_of(ds, label);
        if (t <= rows.size()) continue;
        if (repl) {
            detail::add_replicas(plan, rows, t - rows.size(), rng);
        } else {
            detail::add_replicas_cycling(plan, rows, t - rows.size(), rng);
        }
    }
    return std::move(plan).finish();
}

StrategyOutcome imp_samp(const Dataset& ds, const ClassPercSpec& spec, std::uint64_t seed) {
    require_nominal(ds);
    const auto targets = resolve_importance(class_counts(ds), spec);
    Rng rng(seed);
    Plan plan(ds);
    for (const auto& [label, t] : targets) {
        auto rows = detail::rows_of(ds, label);
        if (t < rows.size()) {
            detail::shrink(plan, rows, t, false, rng);
        } else {
            detail::add_replicas(plan, rows, t - rows.size(), rng);
        }
    }
    return std::move(plan).finish();
}

StrategyOutcome tomek(const Dataset& ds, const Metric& metric, const ClassSelector& cl, TomekRemove rem) {
    require_nominal(ds);
    const auto counts = class_counts(ds);
    const auto focus = code_mask(ds, cl.resolve(counts));
    NeighborIndex idx(ds, metric);
    Plan plan(ds);

    const auto codes = ds.target_codes();
    std::vector<std::size_t> population(ds.target().levels.size(), 0);
    for (auto c : codes) ++population[static_cast<std::size_t>(c)];

    bool any = false;
    if (ds.n_rows() >= 2) {
        const auto nn = idx.knn_all(1);
        for (std::size_t i = 0; i < ds.n_rows(); ++i) {
            const std::size_t j = nn[i].front();
            if (j <= i || nn[j].front() != i || codes[i] == codes[j]) {
                continue;
            }
            const auto ci = static_cast<std::size_t>(codes[i]);
            const auto cj = static_cast<std::size_t>(codes[j]);
            const bool in_i = focus[ci];
            const bool in_j = focus[cj];
            bool drop_i = false;
            bool drop_j = false;
            if (in_i && in_j) {
                if (rem == TomekRemove::Both || population[ci] == population[cj]) {
                    drop_i = drop_j = true;
                } else {
                    (population[ci] > population[cj] ? drop_i : drop_j) = true;
                }
            } else {
                drop_i = in_i;
                drop_j = in_j;
            }
            if (drop_i) plan.remove(i);
            if (drop_j) plan.remove(j);
            any = any || drop_i || drop_j;
        }
    }
    if (!any) {
        plan.warn(tomek_none);
    }
    return std::move(plan).finish();
}

CnnResult cnn(const Dataset& ds, const Metric& metric, const ClassSelector& cl, std::uint64_t seed) {
    require_nominal(ds);
    const auto counts = class_counts(ds);
    CnnResult result;
    result.important = cl.resolve(counts);
    if (result.important.size() == counts.size()) {
        throw DataError("every class is marked important; CNN has nothing to condense");
    }
    for (const auto& [label, n] : counts) {
        if (std::find(result.important.begin(), result.important.end(), label) == result.important.end()) {
            result.unimportant.push_back(label);
        }
    }

    NeighborIndex idx(ds, metric);
    Rng rng(seed);
    const auto codes = ds.target_codes();
    std::vector<bool> in_set(ds.n_rows(), false);
    for (const auto& label : result.important) {
        for (auto r : detail::rows_of(ds, label)) in_set[r] = true;
    }
    for (const auto& label : result.unimportant) {
        auto rows = detail::rows_of(ds, label);
        in_set[rows[rng.index(rows.size())]] = true;
    }

    while (true) {
        std::vector<std::size_t> members;
        std::vector<std::size_t> outside;
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            (in_set[r] ? members : outside).push_back(r);
        }
        std::vector<char> wrong(outside.size(), 0);
        parallel_for(outside.size(), [&](std::size_t i) {
            const auto nn = idx.knn(outside[i], 1, members);
            wrong[i] = codes[nn.front()] != codes[outside[i]];
        });
        bool grew = false;
        for (std::size_t i = 0; i < outside.size(); ++i) {
            if (wrong[i]) {
                in_set[outside[i]] = true;
                grew = true;
            }
        }
        if (!grew) break;
    }

    Plan plan(ds);
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        if (!in_set[r]) plan.remove(r);
    }
    result.outcome = std::move(plan).finish();
    return result;
}

StrategyOutcome oss(const Dataset& ds, const Metric& metric, const ClassSelector& cl, OssStart start, std::uint64_t seed) {
    require_nominal(ds);
    if (start == OssStart::CNN) {
        auto first = cnn(ds, metric, cl, seed).outcome;
        auto second = tomek(first.data, metric, ClassSelector::all(), TomekRemove::Both);
        return chain(std::move(first), std::move(second), ds.n_rows());
    }
    auto first = tomek(ds, metric, ClassSelector::all(), TomekRemove::Both);
    auto second = cnn(first.data, metric, cl, seed).outcome;
    return chain(std::move(first), std::move(second), ds.n_rows());
}

StrategyOutcome enn(const Dataset& ds, const Metric& metric, std::size_t k, const ClassSelector& cl, std::uint64_t seed) {
    require_nominal(ds);
    check_k(k, ds.n_rows());
    const auto focus = code_mask(ds, cl.resolve(class_counts(ds)));
    NeighborIndex idx(ds, metric);
    const auto nn = idx.knn_all(k);
    const auto codes = ds.target_codes();
    const std::size_t need = (k + 1) / 2;

    Plan plan(ds);
    bool any = false;
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        if (!focus[static_cast<std::size_t>(codes[i])]) continue;
        std::size_t disagree = 0;
        for (auto j : nn[i]) disagree += codes[j] != codes[i];
        if (disagree >= need) {
            plan.remove(i);
            any = true;
        }
    }
    if (!any) {
        plan.warn(enn_none);
    }

    Rng rng(seed);
    for (const auto& rows : detail::rows_by_class(ds)) {
        if (!rows.empty() && std::all_of(rows.begin(), rows.end(), [&](auto r) { return plan.is_removed(r); })) {
            plan.restore(rows[rng.index(rows.size())]);
        }
    }
    return std::move(plan).finish();
}

StrategyOutcome ncl(const Dataset& ds, const Metric& metric, std::size_t k, const ClassSelector& cl, std::uint64_t seed,
                    NclScan scan) {
    require_nominal(ds);
    check_k(k, ds.n_rows());
    const auto counts = class_counts(ds);
    const auto focus_labels = cl.resolve(counts);
    if (focus_labels.empty()) {
        throw DataError("no class qualifies as a focus class for NCL");
    }
    const auto focus = code_mask(ds, focus_labels);
    std::size_t smallest_focus = ds.n_rows();
    for (const auto& l : focus_labels) smallest_focus = std::min(smallest_focus, counts.at(l));

    NeighborIndex idx(ds, metric);
    const auto nn = idx.knn_all(k);
    const auto codes = ds.target_codes();
    std::vector<std::size_t> population(ds.target().levels.size(), 0);
    for (auto c : codes) ++population[static_cast<std::size_t>(c)];
    auto in_focus = [&](std::size_t r) { return focus[static_cast<std::size_t>(codes[r])]; };
    auto big_enough = [&](std::size_t r) { return 2 * population[static_cast<std::size_t>(codes[r])] >= smallest_focus; };

    Plan plan(ds);
    const std::size_t need = (k + 1) / 2;
    bool any_edited = false;
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        if (in_focus(i)) continue;
        std::size_t disagree = 0;
        for (auto j : nn[i]) disagree += codes[j] != codes[i];
        if (disagree >= need) {
            plan.remove(i);
            any_edited = true;
        }
    }
    if (!any_edited) {
        plan.warn(enn_none);
    }

    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        if (scan == NclScan::FocusNeighbors) {
            if (!in_focus(i)) continue;
            for (auto o : nn[i]) {
                if (!in_focus(o) && big_enough(o)) plan.remove(o);
            }
        } else {
            if (in_focus(i) || !big_enough(i)) continue;
            if (std::any_of(nn[i].begin(), nn[i].end(), in_focus)) plan.remove(i);
        }
    }

    Rng rng(seed);
    for (const auto& rows : detail::rows_by_class(ds)) {
        if (!rows.empty() && std::all_of(rows.begin(), rows.end(), [&](auto r) { return plan.is_removed(r); })) {
            plan.restore(rows[rng.index(rows.size())]);
        }
    }
    return std::move(plan).finish();
}

StrategyOutcome gauss_noise(const Dataset& ds, const ClassPercSpec& spec, double pert, bool repl, std::uint64_t seed) {
    require_nominal(ds);
    if (!std::isfinite(pert) || pert < 0.0) {
        throw DataError("perturbation pert must be finite and non-negative");
    }
    const auto targets = resolve_synthetic(class_counts(ds), spec);
    Rng rng(seed);
    Plan plan(ds);
    for (const auto& [label, t] : targets) {
        auto rows = detail::rows_of(ds, label);
        if (t <= rows.size()) {
            detail::shrink(plan, rows, t, repl, rng);
            continue;
        }
        if (rows.size() == 1) {
            plan.warn("class '" + label + "' has a single row; its new rows are exact replicas");
        }
        const auto stats = detail::group_stats(ds, rows);
        for (auto s : detail::spread_seeds(rows, t - rows.size(), rng)) {
            plan.synthesize(s, std::nullopt, detail::gaussian_variant(ds, s, stats, pert, false, rng));
        }
    }
    return std::move(plan).finish();
}

StrategyOutcome smote(const Dataset& ds, const ClassPercSpec& spec, std::size_t k, const Metric& metric, bool repl,
                      std::uint64_t seed) {
    require_nominal(ds);
    if (k == 0) {
        throw DataError("number of neighbors k must be at least 1");
    }
    const auto targets = resolve_synthetic(class_counts(ds), spec);
    NeighborIndex idx(ds, metric);
    Rng rng(seed);
    Plan plan(ds);
    for (const auto& [label, t] : targets) {
        auto rows = detail::rows_of(ds, label);
        if (t <= rows.size()) {
            detail::shrink(plan, rows, t, repl, rng);
            continue;
        }
        if (rows.size() == 1) {
            plan.warn("class '" + label + "' has a single row and no neighbor to interpolate with; it was replicated");
            for (std::size_t i = rows.size(); i < t; ++i) plan.replicate(rows.front());
            continue;
        }
        const auto neighbors = group_neighbors(idx, rows, std::min(k, rows.size() - 1));
        std::vector<std::size_t> position(ds.n_rows(), 0);
        for (std::size_t i = 0; i < rows.size(); ++i) position[rows[i]] = i;
        for (auto s : detail::spread_seeds(rows, t - rows.size(), rng)) {
            const auto& cand = neighbors[position[s]];
            const std::size_t partner = cand[rng.index(cand.size())];
            const double u = rng.uniform();
            plan.synthesize(s, partner, detail::interpolate(ds, s, partner, u, rng));
        }
    }
    return std::move(plan).finish();
}

} // namespace rebalance
