#include "sampling.hpp"

#include <algorithm>
#include <cmath>

namespace rebalance::detail {

void Plan::replicate(std::size_t seed) {
    added_.push_back({seed, std::nullopt, false});
    records_.emplace_back(std::nullopt);
}

void Plan::synthesize(std::size_t seed, std::optional<std::size_t> partner, Record record) {
    added_.push_back({seed, partner, true});
    records_.emplace_back(std::move(record));
}

void Plan::warn(std::string message) {
    warnings_.push_back(std::move(message));
}

StrategyOutcome Plan::finish() && {
    StrategyOutcome out;
    DatasetBuilder builder(ds_);
    builder.reserve(ds_.n_rows() + added_.size());
    for (std::size_t r = 0; r < ds_.n_rows(); ++r) {
        if (removed_[r]) {
            out.removed.push_back(r);
        } else {
            builder.push_row(ds_, r);
        }
    }
    for (std::size_t i = 0; i < added_.size(); ++i) {
        if (records_[i]) {
            builder.push(*records_[i]);
        } else {
            builder.push_row(ds_, added_[i].seed);
        }
    }
    out.data = std::move(builder).build();
    out.added = std::move(added_);
    out.warnings = std::move(warnings_);
    return out;
}

void shrink(Plan& plan, std::span<const std::size_t> rows, std::size_t target, bool repl, Rng& rng) {
    const std::size_t n = rows.size();
    if (target >= n && !repl) {
        return;
    }
    if (!repl) {
        std::vector<bool> keep(n, false);
        for (auto i : rng.sample_without_replacement(n, target)) {
            keep[i] = true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!keep[i]) plan.remove(rows[i]);
        }
        return;
    }
    if (target > n) {
        throw DataError("sampling with replacement cannot grow a group while under-sampling");
    }
    std::vector<std::size_t> draws(n, 0);
    for (auto i : rng.sample_with_replacement(n, target)) {
        ++draws[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (draws[i] == 0) {
            plan.remove(rows[i]);
        }
        for (std::size_t extra = 1; extra < draws[i]; ++extra) {
            plan.replicate(rows[i]);
        }
    }
}

void add_replicas(Plan& plan, std::span<const std::size_t> rows, std::size_t count, Rng& rng) {
    if (count == 0) return;
    if (rows.empty()) {
        throw DataError("cannot replicate rows of an empty group");
    }
    for (auto i : rng.sample_with_replacement(rows.size(), count)) {
        plan.replicate(rows[i]);
    }
}

void add_replicas_cycling(Plan& plan, std::span<const std::size_t> rows, std::size_t count, Rng& rng) {
    if (count == 0) return;
    if (rows.empty()) {
        throw DataError("cannot replicate rows of an empty group");
    }
    while (count > 0) {
        const std::size_t take = std::min(count, rows.size());
        for (auto i : rng.sample_without_replacement(rows.size(), take)) {
            plan.replicate(rows[i]);
        }
        count -= take;
    }
}

std::vector<std::size_t> spread_seeds(std::span<const std::size_t> rows, std::size_t count, Rng& rng) {
    std::vector<std::size_t> out;
    if (count == 0) return out;
    if (rows.empty()) {
        throw DataError("cannot pick seeds from an empty group");
    }
    out.reserve(count);
    const std::size_t rounds = count / rows.size();
    for (auto r : rows) {
        for (std::size_t k = 0; k < rounds; ++k) out.push_back(r);
    }
    for (auto i : rng.sample_without_replacement(rows.size(), count % rows.size())) {
        out.push_back(rows[i]);
    }
    return out;
}

GroupStats group_stats(const Dataset& ds, std::span<const std::size_t> rows) {
    GroupStats s;
    s.sd.assign(ds.n_cols(), 0.0);
    s.label_weights.resize(ds.n_cols());
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
        const auto& col = ds.column(c);
        if (col.kind == ColumnKind::Numeric) {
            double sum = 0.0;
            std::size_t n = 0;
            for (auto r : rows) {
                if (!std::isnan(col.numbers[r])) {
                    sum += col.numbers[r];
                    ++n;
                }
            }
            if (n > 1) {
                const double mean = sum / static_cast<double>(n);
                double ss = 0.0;
                for (auto r : rows) {
                    const double v = col.numbers[r];
                    if (!std::isnan(v)) ss += (v - mean) * (v - mean);
                }
                s.sd[c] = std::sqrt(ss / static_cast<double>(n - 1));
            }
        } else {
            auto& w = s.label_weights[c];
            w.assign(col.levels.size(), 0.0);
            for (auto r : rows) {
                if (col.codes[r] != missing_code) {
                    w[static_cast<std::size_t>(col.codes[r])] += 1.0;
                }
            }
        }
    }
    return s;
}

Record gaussian_variant(const Dataset& ds, std::size_t seed, const GroupStats& stats, double pert, bool include_target,
                        Rng& rng) {
    Record rec = ds.record(seed);
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
        if (c == ds.target_index() && !include_target) {
            continue;
        }
        const auto& col = ds.column(c);
        if (col.kind == ColumnKind::Numeric) {
            if (!std::isnan(rec[c].number)) {
                rec[c].number += rng.normal(0.0, stats.sd[c] * pert);
            }
        } else {
            const auto& w = stats.label_weights[c];
            bool any = std::any_of(w.begin(), w.end(), [](double x) { return x > 0.0; });
            rec[c].code = any ? static_cast<std::int32_t>(rng.weighted_with_replacement(w, 1).front()) : missing_code;
        }
    }
    return rec;
}

Record interpolate(const Dataset& ds, std::size_t seed, std::size_t neighbor, double u, Rng& rng) {
    Record rec = ds.record(seed);
    const Record other = ds.record(neighbor);
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
        if (c == ds.target_index()) {
            continue;
        }
        if (ds.column(c).kind == ColumnKind::Numeric) {
            const double a = rec[c].number;
            const double b = other[c].number;
            if (std::isnan(a)) {
                rec[c].number = b;
            } else if (!std::isnan(b)) {
                rec[c].number = a + u * (b - a);
            }
        } else if (rng.coin()) {
            rec[c].code = other[c].code;
        }
    }
    return rec;
}

std::vector<std::vector<std::size_t>> rows_by_class(const Dataset& ds) {
    std::vector<std::vector<std::size_t>> out(ds.target().levels.size());
    auto codes = ds.target_codes();
    for (std::size_t r = 0; r < codes.size(); ++r) {
        out[static_cast<std::size_t>(codes[r])].push_back(r);
    }
    return out;
}

std::vector<std::size_t> rows_of(const Dataset& ds, std::string_view label) {
    const auto code = ds.target().code_of(label);
    std::vector<std::size_t> out;
    auto codes = ds.target_codes();
    for (std::size_t r = 0; r < codes.size(); ++r) {
        if (codes[r] == code) out.push_back(r);
    }
    return out;
}

} // namespace rebalance::detail
