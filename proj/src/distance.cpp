#include "rebalance/distance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <utility>

#include "rebalance/parallel.hpp"

namespace rebalance {

Metric Metric::minkowsky(double p) {
    if (!std::isfinite(p) || !(p > 0.0)) {
        throw DataError("Minkowsky exponent p must be finite and > 0");
    }
    return {MetricKind::Minkowsky, p};
}

Metric Metric::parse(std::string_view name, std::optional<double> p) {
    std::string key;
    for (char c : name) {
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (key == "p-norm" || key == "minkowsky" || key == "minkowski") {
        if (!p) {
            throw DataError("the Minkowsky distance needs an exponent p");
        }
        return minkowsky(*p);
    }
    if (p) {
        throw DataError("exponent p only applies to the Minkowsky (p-norm) distance");
    }
    if (key == "euclidean") return euclidean();
    if (key == "manhattan") return manhattan();
    if (key == "chebyshev") return chebyshev();
    if (key == "canberra") return canberra();
    if (key == "overlap") return overlap();
    if (key == "heom") return heom();
    if (key == "hvdm") return hvdm();
    throw DataError("unknown distance '" + std::string(name) + "'");
}

std::string Metric::name() const {
    switch (kind) {
    case MetricKind::Euclidean: return "Euclidean";
    case MetricKind::Manhattan: return "Manhattan";
    case MetricKind::Minkowsky: return "p-norm";
    case MetricKind::Chebyshev: return "Chebyshev";
    case MetricKind::Canberra: return "Canberra";
    case MetricKind::Overlap: return "Overlap";
    case MetricKind::HEOM: return "HEOM";
    case MetricKind::HVDM: return "HVDM";
    }
    return "?";
}

FeatureMatrix::FeatureMatrix(const Dataset& ds) : rows_(ds.n_rows()) {
    for (auto c : ds.feature_indices()) {
        if (ds.column(c).kind == ColumnKind::Numeric) {
            numeric_columns_.push_back(c);
        } else {
            nominal_columns_.push_back(c);
        }
    }
    numbers_.resize(rows_ * numeric_columns_.size());
    codes_.resize(rows_ * nominal_columns_.size());
    for (std::size_t j = 0; j < numeric_columns_.size(); ++j) {
        const auto& col = ds.column(numeric_columns_[j]).numbers;
        for (std::size_t r = 0; r < rows_; ++r) {
            numbers_[r * numeric_columns_.size() + j] = col[r];
        }
    }
    for (std::size_t j = 0; j < nominal_columns_.size(); ++j) {
        const auto& col = ds.column(nominal_columns_[j]).codes;
        for (std::size_t r = 0; r < rows_; ++r) {
            codes_[r * nominal_columns_.size() + j] = col[r];
        }
    }
}

FeatureRow FeatureMatrix::extract(const Record& record) const {
    FeatureRow out;
    out.numbers.reserve(numeric_columns_.size());
    out.codes.reserve(nominal_columns_.size());
    for (auto c : numeric_columns_) {
        out.numbers.push_back(record.at(c).number);
    }
    for (auto c : nominal_columns_) {
        out.codes.push_back(record.at(c).code);
    }
    return out;
}

bool FeatureMatrix::has_missing() const {
    return std::any_of(numbers_.begin(), numbers_.end(), [](double v) { return std::isnan(v); }) ||
           std::any_of(codes_.begin(), codes_.end(), [](std::int32_t c) { return c == missing_code; });
}

double VdmTable::norm_vdm(std::int32_t x, std::int32_t y) const {
    const double* px = conditional.data() + static_cast<std::size_t>(x) * n_classes;
    const double* py = conditional.data() + static_cast<std::size_t>(y) * n_classes;
    double sum = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        double d = px[c] - py[c];
        sum += d * d;
    }
    return std::sqrt(sum);
}

namespace {

bool numeric_only(MetricKind k) {
    return k == MetricKind::Euclidean || k == MetricKind::Manhattan || k == MetricKind::Minkowsky ||
           k == MetricKind::Chebyshev || k == MetricKind::Canberra;
}

} // namespace

MetricContext MetricContext::build(const Dataset& ds, const Metric& metric) {
    if (metric.kind == MetricKind::Minkowsky) {
        if (!metric.p || !std::isfinite(*metric.p) || !(*metric.p > 0.0)) {
            throw DataError("Minkowsky exponent p must be finite and > 0");
        }
    } else if (metric.p) {
        throw DataError("exponent p only applies to the Minkowsky (p-norm) distance");
    }

    FeatureMatrix fm(ds);
    if (numeric_only(metric.kind)) {
        if (fm.nominal_width() > 0) {
            throw DataError("the distance (" + metric.name() + ") is not possible to use with nominal features");
        }
        if (fm.has_missing()) {
            throw DataError("the distance (" + metric.name() + ") does not handle Missing values; use HEOM or HVDM");
        }
    }
    if (metric.kind == MetricKind::Overlap) {
        if (fm.numeric_width() > 0) {
            throw DataError("the distance (Overlap) is only possible to use with nominal features");
        }
        if (fm.has_missing()) {
            throw DataError("the distance (Overlap) does not handle Missing values; use HEOM or HVDM");
        }
    }
    if (metric.kind == MetricKind::HVDM && !ds.has_nominal_target()) {
        throw DataError("the distance (HVDM) needs a nominal target; '" + ds.target_name() + "' is numeric");
    }

    MetricContext ctx;
    ctx.metric_ = metric;

    for (auto c : fm.numeric_columns()) {
        const auto& values = ds.column(c).numbers;
        double lo = 0.0;
        double hi = 0.0;
        double sum = 0.0;
        std::size_t n = 0;
        for (double v : values) {
            if (std::isnan(v)) {
                continue;
            }
            if (n == 0) {
                lo = hi = v;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
            ++n;
        }
        double sd = 0.0;
        if (n > 1) {
            const double mean = sum / static_cast<double>(n);
            double ss = 0.0;
            for (double v : values) {
                if (!std::isnan(v)) {
                    ss += (v - mean) * (v - mean);
                }
            }
            sd = std::sqrt(ss / static_cast<double>(n - 1));
        }
        ctx.ranges_.push_back(hi - lo);
        ctx.sds_.push_back(sd);
    }

    if (metric.kind == MetricKind::HVDM) {
        const auto& target = ds.target();
        ctx.n_classes_ = target.levels.size();
        for (auto c : fm.nominal_columns()) {
            const auto& col = ds.column(c);
            VdmTable t;
            t.n_values = col.levels.size();
            t.n_classes = ctx.n_classes_;
            t.value_counts.assign(t.n_values, 0);
            t.value_class_counts.assign(t.n_values * t.n_classes, 0);
            for (std::size_t r = 0; r < ds.n_rows(); ++r) {
                auto x = col.codes[r];
                if (x == missing_code) {
                    continue;
                }
                auto xi = static_cast<std::size_t>(x);
                ++t.value_counts[xi];
                ++t.value_class_counts[xi * t.n_classes + static_cast<std::size_t>(target.codes[r])];
            }
            t.conditional.assign(t.value_class_counts.size(), 0.0);
            for (std::size_t x = 0; x < t.n_values; ++x) {
                if (t.value_counts[x] == 0) {
                    continue;
                }
                for (std::size_t k = 0; k < t.n_classes; ++k) {
                    t.conditional[x * t.n_classes + k] = static_cast<double>(t.value_class_counts[x * t.n_classes + k]) /
                                                         static_cast<double>(t.value_counts[x]);
                }
            }
            ctx.vdm_.push_back(std::move(t));
        }
    }

    return ctx;
}

double distance(const MetricContext& ctx, RowView a, RowView b) {
    const auto& x = a.numbers;
    const auto& y = b.numbers;
    const std::size_t m = x.size();

    switch (ctx.metric().kind) {
    case MetricKind::Euclidean: {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double d = x[i] - y[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    case MetricKind::Manhattan: {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s += std::abs(x[i] - y[i]);
        }
        return s;
    }
    case MetricKind::Minkowsky: {
        const double p = *ctx.metric().p;
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s += std::pow(std::abs(x[i] - y[i]), p);
        }
        return std::pow(s, 1.0 / p);
    }
    case MetricKind::Chebyshev: {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s = std::max(s, std::abs(x[i] - y[i]));
        }
        return s;
    }
    case MetricKind::Canberra: {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double den = std::abs(x[i]) + std::abs(y[i]);
            if (den > 0.0) {
                s += std::abs(x[i] - y[i]) / den;
            }
        }
        return s;
    }
    case MetricKind::Overlap: {
        double s = 0.0;
        for (std::size_t i = 0; i < a.codes.size(); ++i) {
            s += a.codes[i] != b.codes[i] ? 1.0 : 0.0;
        }
        return s;
    }
    case MetricKind::HEOM: {
        double s = 0.0;
        const auto ranges = ctx.ranges();
        for (std::size_t i = 0; i < m; ++i) {
            if (std::isnan(x[i]) || std::isnan(y[i])) {
                s += 1.0;
            } else if (ranges[i] > 0.0) {
                double d = std::abs(x[i] - y[i]) / ranges[i];
                s += d * d;
            }
        }
        for (std::size_t i = 0; i < a.codes.size(); ++i) {
            if (a.codes[i] == missing_code || b.codes[i] == missing_code || a.codes[i] != b.codes[i]) {
                s += 1.0;
            }
        }
        return std::sqrt(s);
    }
    case MetricKind::HVDM: {
        double s = 0.0;
        const auto sds = ctx.sds();
        for (std::size_t i = 0; i < m; ++i) {
            if (std::isnan(x[i]) || std::isnan(y[i])) {
                s += 1.0;
            } else if (sds[i] > 0.0) {
                double d = std::abs(x[i] - y[i]) / (4.0 * sds[i]);
                s += d * d;
            }
        }
        const auto& tables = ctx.vdm();
        for (std::size_t i = 0; i < a.codes.size(); ++i) {
            if (a.codes[i] == missing_code || b.codes[i] == missing_code) {
                s += 1.0;
            } else {
                double d = tables[i].norm_vdm(a.codes[i], b.codes[i]);
                s += d * d;
            }
        }
        return std::sqrt(s);
    }
    }
    return 0.0;
}

NeighborIndex::NeighborIndex(const Dataset& ds, const Metric& metric)
    : features_(ds), context_(MetricContext::build(ds, metric)) {}

NeighborIndex::NeighborIndex(FeatureMatrix features, MetricContext context)
    : features_(std::move(features)), context_(std::move(context)) {}

double NeighborIndex::distance(std::size_t i, std::size_t j) const {
    return rebalance::distance(context_, features_.row(i), features_.row(j));
}

double NeighborIndex::distance(RowView a, std::size_t j) const {
    return rebalance::distance(context_, a, features_.row(j));
}

std::vector<std::size_t> NeighborIndex::knn(std::size_t query, std::size_t k) const {
    std::vector<std::size_t> candidates;
    candidates.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (i != query) {
            candidates.push_back(i);
        }
    }
    return knn(features_.row(query), k, candidates);
}

std::vector<std::size_t> NeighborIndex::knn(std::size_t query, std::size_t k, std::span<const std::size_t> candidates) const {
    return knn(features_.row(query), k, candidates);
}

std::vector<std::size_t> NeighborIndex::knn(RowView query, std::size_t k, std::span<const std::size_t> candidates) const {
    if (k == 0) {
        throw DataError("number of neighbors k must be at least 1");
    }
    if (candidates.empty()) {
        throw DataError("neighbor search needs at least one candidate row");
    }
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(candidates.size());
    for (auto c : candidates) {
        scored.emplace_back(distance(query, c), c);
    }
    const std::size_t take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end());
    std::vector<std::size_t> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        out.push_back(scored[i].second);
    }
    return out;
}

std::vector<std::vector<std::size_t>> NeighborIndex::knn_all(std::size_t k) const {
    std::vector<std::vector<std::size_t>> out(size());
    if (size() < 2) {
        return out;
    }
    parallel_for(size(), [&](std::size_t i) { out[i] = knn(i, k); });
    return out;
}

} // namespace rebalance
