#pragma once

// CSV emission. Layout:
//   # levyexit-csv v1
//   # key=value metadata lines
//   column,header
//   rows in 12-significant-digit scientific notation, '\n' endings

#include <cstdio>
#include <initializer_list>
#include <string>
#include <vector>

namespace levyexit {

inline constexpr const char* kCsvSchema = "levyexit-csv v1";

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void comment(const std::string& line) { comments_.push_back(line); }

    void row(std::initializer_list<double> values) {
        std::string line;
        bool first = true;
        for (double v : values) {
            if (!first) line += ',';
            line += format_number(v);
            first = false;
        }
        rows_.push_back(std::move(line));
    }

    std::size_t row_count() const { return rows_.size(); }

    std::string str() const {
        std::string out = std::string("# ") + kCsvSchema + "\n";
        for (const auto& c : comments_) out += "# " + c + "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            out += (i ? "," : "") + columns_[i];
        }
        out += "\n";
        for (const auto& r : rows_) out += r + "\n";
        return out;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::string> rows_;
};

}  // namespace levyexit
