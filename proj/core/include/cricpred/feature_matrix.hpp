#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cricpred/date.hpp"
#include "cricpred/errors.hpp"

namespace cricpred {

// Design matrix: named numeric columns plus one binary home-win label per
// included match, rows in (date, match_id) order.
class FeatureMatrix {
public:
    std::vector<std::string> columns;
    std::vector<std::string> match_ids;
    std::vector<int> seasons;
    std::vector<Date> dates;
    std::vector<int> labels;  // 1 = home win
    std::vector<std::vector<double>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return columns.size(); }

    // Throws ConfigError if absent.
    std::size_t col_index(const std::string& name) const;
    bool has_column(const std::string& name) const;

    std::vector<double> column(const std::string& name) const;
    std::vector<double> column(std::size_t idx) const;

    // New matrix with the given columns, in the given order.
    FeatureMatrix select_columns(const std::vector<std::string>& names) const;

    // Rows whose season is in `keep` (order preserved).
    FeatureMatrix filter_seasons(const std::vector<int>& keep) const;

    std::vector<int> distinct_seasons() const;  // ascending

    // Appends the other matrix's columns; rows must describe the same
    // matches in the same order.
    FeatureMatrix hcat(const FeatureMatrix& other) const;

    // match_id,season,date,label,<features...> with 12 significant digits.
    void write_csv(const std::string& path) const;
    static FeatureMatrix read_csv(const std::string& path);
};

}  // namespace cricpred
