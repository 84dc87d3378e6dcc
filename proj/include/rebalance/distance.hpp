#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rebalance/tabular.hpp"

/**
 * @file distance.hpp
 *
 * @brief Distances over mixed-type rows and brute-force neighbor search.
 *
 * Euclidean, Manhattan, Minkowsky, Chebyshev and Canberra work on numeric
 * features only and apply no normalization. Overlap works on nominal
 * features only. HEOM and HVDM accept any mix and treat Missing cells as
 * maximally distant (per-attribute term 1).
 */

namespace rebalance {

enum class MetricKind { Euclidean, Manhattan, Minkowsky, Chebyshev, Canberra, Overlap, HEOM, HVDM };

struct Metric {
    MetricKind kind = MetricKind::Euclidean;
    /// Exponent; present iff kind is Minkowsky.
    std::optional<double> p;

    static Metric euclidean() { return {MetricKind::Euclidean, std::nullopt}; }
    static Metric manhattan() { return {MetricKind::Manhattan, std::nullopt}; }
    static Metric minkowsky(double p);
    static Metric chebyshev() { return {MetricKind::Chebyshev, std::nullopt}; }
    static Metric canberra() { return {MetricKind::Canberra, std::nullopt}; }
    static Metric overlap() { return {MetricKind::Overlap, std::nullopt}; }
    static Metric heom() { return {MetricKind::HEOM, std::nullopt}; }
    static Metric hvdm() { return {MetricKind::HVDM, std::nullopt}; }

    /// Case-insensitive name ("euclidean", "p-norm"/"minkowsky", "heom", ...).
    static Metric parse(std::string_view name, std::optional<double> p = std::nullopt);

    std::string name() const;

    friend bool operator==(const Metric&, const Metric&) = default;
};

/// Feature values of one row: numeric features first, then nominal codes.
struct RowView {
    std::span<const double> numbers;
    std::span<const std::int32_t> codes;
};

/// Owning counterpart of RowView, used for rows that are not part of a dataset.
struct FeatureRow {
    std::vector<double> numbers;
    std::vector<std::int32_t> codes;

    RowView view() const { return {numbers, codes}; }
};

/**
 * Row-major copy of a dataset's feature columns (every column except the target),
 * split into a numeric block and a nominal block.
 */
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    explicit FeatureMatrix(const Dataset& ds);

    std::size_t rows() const { return rows_; }
    std::size_t numeric_width() const { return numeric_columns_.size(); }
    std::size_t nominal_width() const { return nominal_columns_.size(); }

    /// Dataset column index of each numeric / nominal feature.
    const std::vector<std::size_t>& numeric_columns() const { return numeric_columns_; }
    const std::vector<std::size_t>& nominal_columns() const { return nominal_columns_; }

    RowView row(std::size_t i) const {
        return {std::span<const double>(numbers_).subspan(i * numeric_width(), numeric_width()),
                std::span<const std::int32_t>(codes_).subspan(i * nominal_width(), nominal_width())};
    }

    /// Feature slice of a full-width record laid out like the source dataset.
    FeatureRow extract(const Record& record) const;

    bool has_missing() const;

private:
    std::size_t rows_ = 0;
    std::vector<std::size_t> numeric_columns_;
    std::vector<std::size_t> nominal_columns_;
    std::vector<double> numbers_;
    std::vector<std::int32_t> codes_;
};

/// Value-difference statistics of one nominal attribute.
struct VdmTable {
    std::size_t n_values = 0;
    std::size_t n_classes = 0;
    /// N_{a,x}: rows holding value x (non-Missing).
    std::vector<std::size_t> value_counts;
    /// N_{a,x,c}, laid out as [x * n_classes + c].
    std::vector<std::size_t> value_class_counts;
    /// N_{a,x,c} / N_{a,x}, 0 where N_{a,x} = 0.
    std::vector<double> conditional;

    double norm_vdm(std::int32_t x, std::int32_t y) const;
};

/**
 * Dataset statistics a metric needs: per numeric feature range and standard
 * deviation (over non-Missing cells; sample sd with n - 1), and for HVDM
 * per nominal feature value-difference tables over the class labels.
 */
class MetricContext {
public:
    static MetricContext build(const Dataset& ds, const Metric& metric);

    const Metric& metric() const { return metric_; }
    std::span<const double> ranges() const { return ranges_; }
    std::span<const double> sds() const { return sds_; }
    const std::vector<VdmTable>& vdm() const { return vdm_; }
    std::size_t n_classes() const { return n_classes_; }

private:
    Metric metric_;
    std::vector<double> ranges_;
    std::vector<double> sds_;
    std::vector<VdmTable> vdm_;
    std::size_t n_classes_ = 0;
};

/// Distance between two rows under the context's metric.
double distance(const MetricContext& ctx, RowView a, RowView b);

/**
 * Brute-force k-nearest-neighbor search over one dataset.
 *
 * Results are ordered by ascending distance, ties broken by the lower row
 * index. When fewer than k candidates exist, all of them are returned.
 */
class NeighborIndex {
public:
    NeighborIndex(const Dataset& ds, const Metric& metric);
    NeighborIndex(FeatureMatrix features, MetricContext context);

    const FeatureMatrix& features() const { return features_; }
    const MetricContext& context() const { return context_; }
    std::size_t size() const { return features_.rows(); }

    double distance(std::size_t i, std::size_t j) const;
    double distance(RowView a, std::size_t j) const;

    /// Neighbors of row `query` among every other row.
    std::vector<std::size_t> knn(std::size_t query, std::size_t k) const;

    /// Neighbors of row `query` among `candidates` (the query itself is kept if listed).
    std::vector<std::size_t> knn(std::size_t query, std::size_t k, std::span<const std::size_t> candidates) const;

    std::vector<std::size_t> knn(RowView query, std::size_t k, std::span<const std::size_t> candidates) const;

    /// knn(i, k) for every row, computed in parallel.
    std::vector<std::vector<std::size_t>> knn_all(std::size_t k) const;

private:
    FeatureMatrix features_;
    MetricContext context_;
};

} // namespace rebalance
