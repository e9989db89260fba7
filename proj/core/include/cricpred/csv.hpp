#pragma once

#include <string>
#include <vector>

#include "cricpred/date.hpp"
#include "cricpred/errors.hpp"

namespace cricpred {

// One parsed CSV file. Comma-separated, UTF-8, header row required,
// no quoting (the corpus schemas never need it).
struct CsvFile {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line per row
};

CsvFile read_csv(const std::string& path);

// Throws DataError unless the file's header matches `expected` exactly.
void require_header(const CsvFile& file, const std::vector<std::string>& expected);

// Typed field accessors carrying file:line:column context into errors.
// Columns are 1-based in error messages.
class CsvRow {
public:
    CsvRow(const CsvFile& file, std::size_t row_index)
        : file_(file), index_(row_index) {}

    const std::string& raw(std::size_t col) const;
    long long get_int(std::size_t col) const;
    double get_double(std::size_t col) const;
    Date get_date(std::size_t col) const;
    bool get_bool01(std::size_t col) const;
    std::size_t line() const { return file_.line_numbers[index_]; }

    [[noreturn]] void fail(std::size_t col, const std::string& message) const;

private:
    const CsvFile& file_;
    std::size_t index_;
};

// Shortest representation that round-trips the double exactly.
std::string format_double(double v);

// Fixed 12-significant-digit form used by feature CSV exports.
std::string format_double_12(double v);

}  // namespace cricpred
