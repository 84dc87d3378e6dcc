// RFC-4180 reader/writer for Dataset.

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rebalance/tabular.hpp"

namespace rebalance {

namespace {

struct Field {
    std::string text;
    bool empty_unquoted = false;
};

using RawRow = std::vector<Field>;

class CsvScanner {
public:
    explicit CsvScanner(std::string_view text) : text_(text) {
        if (text_.substr(0, 3) == "\xEF\xBB\xBF") {
            text_.remove_prefix(3);
        }
    }

    bool done() const { return pos_ >= text_.size(); }
    std::size_t line() const { return line_; }

    RawRow next_row() {
        RawRow row;
        while (true) {
            Field f = next_field();
            row.push_back(std::move(f));
            if (pos_ >= text_.size()) {
                return row;
            }
            char c = text_[pos_];
            if (c == ',') {
                ++pos_;
                continue;
            }
            // end of record
            if (c == '\r') {
                ++pos_;
                if (pos_ < text_.size() && text_[pos_] == '\n') {
                    ++pos_;
                }
            } else {
                ++pos_;
            }
            ++line_;
            return row;
        }
    }

private:
    Field next_field() {
        Field f;
        if (pos_ < text_.size() && text_[pos_] == '"') {
            ++pos_;
            while (true) {
                if (pos_ >= text_.size()) {
                    throw DataError("unterminated quoted field starting on line " + std::to_string(line_));
                }
                char c = text_[pos_++];
                if (c == '"') {
                    if (pos_ < text_.size() && text_[pos_] == '"') {
                        f.text.push_back('"');
                        ++pos_;
                    } else {
                        break;
                    }
                } else {
                    if (c == '\n') {
                        ++line_;
                    }
                    f.text.push_back(c);
                }
            }
            if (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '\r' && text_[pos_] != '\n') {
                throw DataError("unexpected character after closing quote on line " + std::to_string(line_));
            }
            return f;
        }

        auto start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ',' || c == '\r' || c == '\n') {
                break;
            }
            if (c == '"') {
                throw DataError("stray quote inside unquoted field on line " + std::to_string(line_));
            }
            ++pos_;
        }
        f.text.assign(text_.substr(start, pos_ - start));
        f.empty_unquoted = f.text.empty();
        return f;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

bool needs_quotes(std::string_view s) {
    return s.empty() || s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void put_field(std::string& out, std::string_view s) {
    if (!needs_quotes(s)) {
        out.append(s);
        return;
    }
    out.push_back('"');
    for (char c : s) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
}

} // namespace

std::optional<double> parse_number(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    std::string_view body = text;
    if (body.front() == '+') {
        body.remove_prefix(1);
        if (body.empty() || body.front() == '-' || body.front() == '+') {
            return std::nullopt;
        }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value, std::chars_format::general);
    if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) {
        throw DataError("cannot format number");
    }
    return std::string(buf.data(), ptr);
}

Dataset parse_dataset(std::string_view csv_text, std::string_view target, const std::optional<Schema>& declared_schema) {
    CsvScanner scanner(csv_text);
    if (scanner.done()) {
        throw DataError("CSV input is empty; a header row is required");
    }

    RawRow header = scanner.next_row();
    const std::size_t width = header.size();

    std::vector<RawRow> rows;
    while (!scanner.done()) {
        auto line = scanner.line();
        RawRow row = scanner.next_row();
        if (row.size() != width) {
            // a lone empty line at the very end is the trailing newline, not a record
            if (row.size() == 1 && row.front().empty_unquoted && scanner.done()) {
                break;
            }
            throw DataError("ragged row on line " + std::to_string(line) + ": " + std::to_string(row.size()) +
                            " fields, header has " + std::to_string(width));
        }
        rows.push_back(std::move(row));
    }

    bool target_found = false;
    for (const auto& h : header) {
        target_found = target_found || h.text == target;
    }
    if (!target_found) {
        throw DataError("target column '" + std::string(target) + "' not found in header");
    }
    if (declared_schema) {
        for (const auto& [name, kind] : *declared_schema) {
            bool present = false;
            for (const auto& h : header) {
                present = present || h.text == name;
            }
            if (!present) {
                throw DataError("declared column '" + name + "' not found in header");
            }
        }
    }

    std::vector<Column> columns;
    columns.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
        const std::string& name = header[c].text;

        std::optional<ColumnKind> kind;
        if (declared_schema) {
            if (auto it = declared_schema->find(name); it != declared_schema->end()) {
                kind = it->second;
            }
        }

        std::vector<double> numbers;
        bool numeric_ok = true;
        numbers.reserve(rows.size());
        for (std::size_t r = 0; r < rows.size() && numeric_ok; ++r) {
            const auto& cell = rows[r][c].text;
            if (cell.empty()) {
                numbers.push_back(missing_number);
                continue;
            }
            auto v = parse_number(cell);
            if (!v) {
                if (kind == ColumnKind::Numeric) {
                    throw DataError("column '" + name + "' is declared numeric but row " + std::to_string(r + 1) +
                                    " holds '" + cell + "'");
                }
                numeric_ok = false;
                break;
            }
            numbers.push_back(*v);
        }

        if (kind.value_or(numeric_ok ? ColumnKind::Numeric : ColumnKind::Nominal) == ColumnKind::Numeric) {
            columns.push_back(Column::numeric(name, std::move(numbers)));
        } else {
            std::vector<std::optional<std::string>> labels;
            labels.reserve(rows.size());
            for (const auto& row : rows) {
                const auto& cell = row[c].text;
                labels.push_back(cell.empty() ? std::nullopt : std::optional<std::string>(cell));
            }
            columns.push_back(Column::nominal(name, labels));
        }
    }

    return Dataset(std::move(columns), std::string(target));
}

Dataset read_dataset(const std::filesystem::path& path, std::string_view target, const std::optional<Schema>& declared_schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), target, declared_schema);
}

std::string format_dataset(const Dataset& ds) {
    std::string out;
    const auto& cols = ds.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) {
            out.push_back(',');
        }
        put_field(out, cols[c].name);
    }
    out.push_back('\n');

    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) {
                out.push_back(',');
            }
            const auto& col = cols[c];
            if (col.is_missing(r)) {
                continue;
            }
            if (col.kind == ColumnKind::Numeric) {
                out += format_number(col.numbers[r]);
            } else {
                put_field(out, col.label(r));
            }
        }
        out.push_back('\n');
    }
    return out;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << format_dataset(ds);
    if (!out) {
        throw DataError("failed while writing '" + path.string() + "'");
    }
}

} // namespace rebalance
