#include "rebalance/tabular.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rebalance {

namespace {

Column make_nominal(std::string name, const std::vector<std::optional<std::string>>& labels) {
    Column col;
    col.name = std::move(name);
    col.kind = ColumnKind::Nominal;

    std::set<std::string> distinct;
    for (const auto& l : labels) {
        if (l) {
            distinct.insert(*l);
        }
    }
    col.levels.assign(distinct.begin(), distinct.end());

    std::unordered_map<std::string_view, std::int32_t> lookup;
    for (std::size_t i = 0; i < col.levels.size(); ++i) {
        lookup.emplace(col.levels[i], static_cast<std::int32_t>(i));
    }

    col.codes.reserve(labels.size());
    for (const auto& l : labels) {
        col.codes.push_back(l ? lookup.at(*l) : missing_code);
    }
    return col;
}

} // namespace

Column Column::numeric(std::string name, std::vector<double> values) {
    Column col;
    col.name = std::move(name);
    col.kind = ColumnKind::Numeric;
    for (double v : values) {
        if (std::isinf(v)) {
            throw DataError("column '" + col.name + "' holds a non-finite value");
        }
    }
    col.numbers = std::move(values);
    return col;
}

Column Column::nominal(std::string name, const std::vector<std::optional<std::string>>& labels) {
    return make_nominal(std::move(name), labels);
}

Column Column::nominal(std::string name, const std::vector<std::string>& labels) {
    std::vector<std::optional<std::string>> wrapped(labels.begin(), labels.end());
    return make_nominal(std::move(name), wrapped);
}

const std::string& Column::label(std::size_t row) const {
    if (kind != ColumnKind::Nominal) {
        throw DataError("column '" + name + "' is numeric");
    }
    auto code = codes.at(row);
    if (code == missing_code) {
        throw DataError("column '" + name + "' has a Missing cell at row " + std::to_string(row));
    }
    return levels[static_cast<std::size_t>(code)];
}

std::int32_t Column::code_of(std::string_view l) const {
    auto it = std::lower_bound(levels.begin(), levels.end(), l);
    if (it == levels.end() || *it != l) {
        return missing_code;
    }
    return static_cast<std::int32_t>(it - levels.begin());
}

std::vector<std::string> Column::observed_levels() const {
    std::vector<bool> seen(levels.size(), false);
    for (auto c : codes) {
        if (c != missing_code) {
            seen[static_cast<std::size_t>(c)] = true;
        }
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (seen[i]) {
            out.push_back(levels[i]);
        }
    }
    return out;
}

Dataset::Dataset(std::vector<Column> columns, std::string target) : columns_(std::move(columns)) {
    if (columns_.empty()) {
        throw DataError("dataset has no columns");
    }
    n_rows_ = columns_.front().size();
    std::set<std::string_view> names;
    for (const auto& col : columns_) {
        if (col.size() != n_rows_) {
            throw DataError("column '" + col.name + "' has " + std::to_string(col.size()) + " cells, expected " +
                            std::to_string(n_rows_));
        }
        if (!names.insert(col.name).second) {
            throw DataError("duplicate column name '" + col.name + "'");
        }
    }

    auto idx = find_column(target);
    if (!idx) {
        throw DataError("target column '" + target + "' not found");
    }
    target_ = *idx;

    const auto& tcol = columns_[target_];
    for (std::size_t r = 0; r < n_rows_; ++r) {
        if (tcol.is_missing(r)) {
            throw DataError("target column '" + target + "' has a Missing cell at row " + std::to_string(r));
        }
    }
}

const Column& Dataset::column(std::string_view name) const {
    auto idx = find_column(name);
    if (!idx) {
        throw DataError("column '" + std::string(name) + "' not found");
    }
    return columns_[*idx];
}

std::optional<std::size_t> Dataset::find_column(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> Dataset::feature_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i != target_) {
            out.push_back(i);
        }
    }
    return out;
}

std::span<const std::int32_t> Dataset::target_codes() const {
    if (!has_nominal_target()) {
        throw DataError("target '" + target_name() + "' is numeric; a nominal target is required");
    }
    return target().codes;
}

std::span<const double> Dataset::target_values() const {
    if (has_nominal_target()) {
        throw DataError("target '" + target_name() + "' is nominal; a numeric target is required");
    }
    return target().numbers;
}

Record Dataset::record(std::size_t row) const {
    Record rec(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        const auto& col = columns_[c];
        if (col.kind == ColumnKind::Numeric) {
            rec[c].number = col.numbers.at(row);
        } else {
            rec[c].code = col.codes.at(row);
        }
    }
    return rec;
}

Dataset Dataset::take(std::span<const std::size_t> rows) const {
    DatasetBuilder builder(*this);
    builder.reserve(rows.size());
    for (auto r : rows) {
        builder.push_row(*this, r);
    }
    return std::move(builder).build();
}

Dataset Dataset::empty_like() const {
    return DatasetBuilder(*this).build();
}

bool operator==(const Dataset& a, const Dataset& b) {
    if (a.n_rows_ != b.n_rows_ || a.columns_.size() != b.columns_.size() || a.target_name() != b.target_name()) {
        return false;
    }
    for (std::size_t c = 0; c < a.columns_.size(); ++c) {
        const auto& x = a.columns_[c];
        const auto& y = b.columns_[c];
        if (x.name != y.name || x.kind != y.kind) {
            return false;
        }
        for (std::size_t r = 0; r < a.n_rows_; ++r) {
            bool mx = x.is_missing(r);
            if (mx != y.is_missing(r)) {
                return false;
            }
            if (mx) {
                continue;
            }
            if (x.kind == ColumnKind::Numeric) {
                if (x.numbers[r] != y.numbers[r]) {
                    return false;
                }
            } else if (x.label(r) != y.label(r)) {
                return false;
            }
        }
    }
    return true;
}

DatasetBuilder::DatasetBuilder(const Dataset& schema) {
    data_.target_ = schema.target_;
    data_.columns_.reserve(schema.columns_.size());
    for (const auto& col : schema.columns_) {
        Column c;
        c.name = col.name;
        c.kind = col.kind;
        c.levels = col.levels;
        data_.columns_.push_back(std::move(c));
    }
}

void DatasetBuilder::reserve(std::size_t rows) {
    for (auto& col : data_.columns_) {
        if (col.kind == ColumnKind::Numeric) {
            col.numbers.reserve(rows);
        } else {
            col.codes.reserve(rows);
        }
    }
}

void DatasetBuilder::push_row(const Dataset& source, std::size_t row) {
    for (std::size_t c = 0; c < data_.columns_.size(); ++c) {
        auto& col = data_.columns_[c];
        const auto& src = source.columns_[c];
        if (col.kind == ColumnKind::Numeric) {
            col.numbers.push_back(src.numbers.at(row));
        } else {
            col.codes.push_back(src.codes.at(row));
        }
    }
    ++data_.n_rows_;
}

void DatasetBuilder::push(const Record& record) {
    if (record.size() != data_.columns_.size()) {
        throw DataError("record width does not match the schema");
    }
    // validate everything first so a rejected record leaves the columns untouched
    for (std::size_t c = 0; c < data_.columns_.size(); ++c) {
        const auto& col = data_.columns_[c];
        const bool missing = col.kind == ColumnKind::Numeric ? std::isnan(record[c].number) : record[c].code == missing_code;
        if (c == data_.target_ && missing) {
            throw DataError("record has a Missing target");
        }
        if (col.kind == ColumnKind::Nominal && !missing) {
            const auto code = record[c].code;
            if (code < 0 || static_cast<std::size_t>(code) >= col.levels.size()) {
                throw DataError("record holds an unknown label code for column '" + col.name + "'");
            }
        }
    }
    for (std::size_t c = 0; c < data_.columns_.size(); ++c) {
        auto& col = data_.columns_[c];
        if (col.kind == ColumnKind::Numeric) {
            col.numbers.push_back(record[c].number);
        } else {
            col.codes.push_back(record[c].code);
        }
    }
    ++data_.n_rows_;
}

Dataset DatasetBuilder::build() && {
    return std::move(data_);
}

ClassCounts class_counts(const Dataset& ds) {
    ClassCounts out;
    const auto& t = ds.target();
    if (t.kind != ColumnKind::Nominal) {
        throw DataError("class counts need a nominal target; '" + t.name + "' is numeric");
    }
    std::vector<std::size_t> tally(t.levels.size(), 0);
    for (auto c : t.codes) {
        ++tally[static_cast<std::size_t>(c)];
    }
    for (std::size_t i = 0; i < tally.size(); ++i) {
        if (tally[i] > 0) {
            out.emplace(t.levels[i], tally[i]);
        }
    }
    return out;
}

ClassCounts class_counts_all_levels(const Dataset& ds) {
    ClassCounts out = class_counts(ds);
    for (const auto& l : ds.target().levels) {
        out.try_emplace(l, 0);
    }
    return out;
}

} // namespace rebalance
