#include "cricpred/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cricpred {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

CsvFile read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    CsvFile file;
    file.path = path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            file.header = split_line(line);
            continue;
        }
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != file.header.size()) {
            throw parse_error(path, line_no, fields.size(),
                              "expected " + std::to_string(file.header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
        }
        file.rows.push_back(std::move(fields));
        file.line_numbers.push_back(line_no);
    }
    if (file.header.empty()) throw DataError("empty file (missing header row): " + path);
    return file;
}

void require_header(const CsvFile& file, const std::vector<std::string>& expected) {
    if (file.header != expected) {
        std::ostringstream os;
        os << file.path << ":1: unexpected header, expected \"";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) os << ',';
            os << expected[i];
        }
        os << "\"";
        throw DataError(os.str());
    }
}

const std::string& CsvRow::raw(std::size_t col) const {
    return file_.rows[index_][col];
}

void CsvRow::fail(std::size_t col, const std::string& message) const {
    throw parse_error(file_.path, line(), col + 1, message);
}

long long CsvRow::get_int(std::size_t col) const {
    const std::string& s = raw(col);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(col, "not an integer: \"" + s + "\"");
    }
    return v;
}

double CsvRow::get_double(std::size_t col) const {
    const std::string& s = raw(col);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(col, "not a number: \"" + s + "\"");
    }
    return v;
}

Date CsvRow::get_date(std::size_t col) const {
    auto d = parse_date(raw(col));
    if (!d) fail(col, "not a YYYY-MM-DD date: \"" + raw(col) + "\"");
    return *d;
}

bool CsvRow::get_bool01(std::size_t col) const {
    const std::string& s = raw(col);
    if (s == "0") return false;
    if (s == "1") return true;
    fail(col, "expected 0 or 1, got \"" + s + "\"");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_double_12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

}  // namespace cricpred
