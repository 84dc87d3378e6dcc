#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rebalance/error.hpp"

/**
 * @file tabular.hpp
 *
 * @brief Column-typed in-memory table with CSV input/output.
 */

namespace rebalance {

enum class ColumnKind { Numeric, Nominal };

inline constexpr double missing_number = std::numeric_limits<double>::quiet_NaN();
inline constexpr std::int32_t missing_code = -1;

/**
 * A single typed column.
 *
 * Numeric cells live in `numbers` (NaN marks a Missing cell). Nominal cells
 * live in `codes`, indices into the byte-sorted dictionary `levels`
 * (`missing_code` marks a Missing cell). Only the vector matching `kind` is
 * populated.
 */
struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    std::vector<double> numbers;
    std::vector<std::int32_t> codes;
    std::vector<std::string> levels;

    static Column numeric(std::string name, std::vector<double> values);
    static Column nominal(std::string name, const std::vector<std::optional<std::string>>& labels);
    static Column nominal(std::string name, const std::vector<std::string>& labels);

    std::size_t size() const { return kind == ColumnKind::Numeric ? numbers.size() : codes.size(); }

    bool is_missing(std::size_t row) const {
        return kind == ColumnKind::Numeric ? std::isnan(numbers[row]) : codes[row] == missing_code;
    }

    /// Label of a nominal cell; throws for numeric columns or Missing cells.
    const std::string& label(std::size_t row) const;

    /// Dictionary code of `label`, or `missing_code` if the label is unknown.
    std::int32_t code_of(std::string_view label) const;

    /// Distinct non-Missing labels actually present, byte-sorted.
    std::vector<std::string> observed_levels() const;
};

/// One cell of a row snapshot. Numeric columns use `number`, nominal ones `code`.
struct Cell {
    double number = missing_number;
    std::int32_t code = missing_code;
};

using Record = std::vector<Cell>;

/// Per-label frequencies of a nominal target.
using ClassCounts = std::map<std::string, std::size_t>;

/**
 * Immutable table: equal-length columns plus the name of the target column.
 *
 * The target never holds Missing cells.
 */
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<Column> columns, std::string target);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return columns_.size(); }

    const std::vector<Column>& columns() const { return columns_; }
    const Column& column(std::size_t i) const { return columns_.at(i); }
    const Column& column(std::string_view name) const;
    std::optional<std::size_t> find_column(std::string_view name) const;

    const std::string& target_name() const { return columns_.at(target_).name; }
    std::size_t target_index() const { return target_; }
    const Column& target() const { return columns_.at(target_); }
    bool has_nominal_target() const { return target().kind == ColumnKind::Nominal; }

    /// Indices of every non-target column, in table order.
    std::vector<std::size_t> feature_indices() const;

    /// Target codes (nominal target) or values (numeric target) as a view.
    std::span<const std::int32_t> target_codes() const;
    std::span<const double> target_values() const;

    Record record(std::size_t row) const;

    /// Rows in the given order (repeats allowed); dictionaries are preserved.
    Dataset take(std::span<const std::size_t> rows) const;

    /// Same schema and dictionaries, zero rows.
    Dataset empty_like() const;

    friend bool operator==(const Dataset& a, const Dataset& b);

private:
    friend class DatasetBuilder;

    std::vector<Column> columns_;
    std::size_t target_ = 0;
    std::size_t n_rows_ = 0;
};

/// Appends rows to a copy of an existing schema.
class DatasetBuilder {
public:
    explicit DatasetBuilder(const Dataset& schema);

    void reserve(std::size_t rows);
    void push_row(const Dataset& source, std::size_t row);
    void push(const Record& record);

    Dataset build() &&;

private:
    Dataset data_;
};

using Schema = std::map<std::string, ColumnKind, std::less<>>;

/// Parses a finite real (optional sign, decimal or scientific notation); nullopt otherwise.
std::optional<double> parse_number(std::string_view text);

Dataset read_dataset(const std::filesystem::path& path, std::string_view target,
                     const std::optional<Schema>& declared_schema = std::nullopt);
Dataset parse_dataset(std::string_view csv_text, std::string_view target,
                      const std::optional<Schema>& declared_schema = std::nullopt);

void write_dataset(const Dataset& ds, const std::filesystem::path& path);
std::string format_dataset(const Dataset& ds);

/// Shortest text that parses back to exactly `value` (at most 17 significant digits).
std::string format_number(double value);

ClassCounts class_counts(const Dataset& ds);

/// Counts over every label of the target dictionary, zeros included.
ClassCounts class_counts_all_levels(const Dataset& ds);

} // namespace rebalance
