#include "cricpred/feature_matrix.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "cricpred/csv.hpp"

namespace cricpred {

std::size_t FeatureMatrix::col_index(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ConfigError("unknown feature column: " + name);
    return static_cast<std::size_t>(it - columns.begin());
}

bool FeatureMatrix::has_column(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> FeatureMatrix::column(const std::string& name) const {
    return column(col_index(name));
}

std::vector<double> FeatureMatrix::column(std::size_t idx) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[idx]);
    return out;
}

FeatureMatrix FeatureMatrix::select_columns(const std::vector<std::string>& names) const {
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const auto& n : names) idx.push_back(col_index(n));

    FeatureMatrix out;
    out.columns = names;
    out.match_ids = match_ids;
    out.seasons = seasons;
    out.dates = dates;
    out.labels = labels;
    out.rows.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<double> v;
        v.reserve(idx.size());
        for (auto i : idx) v.push_back(r[i]);
        out.rows.push_back(std::move(v));
    }
    return out;
}

FeatureMatrix FeatureMatrix::filter_seasons(const std::vector<int>& keep) const {
    std::set<int> ks(keep.begin(), keep.end());
    FeatureMatrix out;
    out.columns = columns;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!ks.count(seasons[i])) continue;
        out.match_ids.push_back(match_ids[i]);
        out.seasons.push_back(seasons[i]);
        out.dates.push_back(dates[i]);
        out.labels.push_back(labels[i]);
        out.rows.push_back(rows[i]);
    }
    return out;
}

std::vector<int> FeatureMatrix::distinct_seasons() const {
    std::set<int> s(seasons.begin(), seasons.end());
    return {s.begin(), s.end()};
}

FeatureMatrix FeatureMatrix::hcat(const FeatureMatrix& other) const {
    if (other.n_rows() != n_rows()) throw ConfigError("hcat: row count mismatch");
    FeatureMatrix out = *this;
    for (const auto& c : other.columns) {
        if (has_column(c)) throw ConfigError("hcat: duplicate column " + c);
        out.columns.push_back(c);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (other.match_ids[i] != match_ids[i]) throw ConfigError("hcat: row identity mismatch");
        out.rows[i].insert(out.rows[i].end(), other.rows[i].begin(), other.rows[i].end());
    }
    return out;
}

void FeatureMatrix::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "match_id,season,date,label";
    for (const auto& c : columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << match_ids[i] << ',' << seasons[i] << ',' << to_string(dates[i]) << ','
            << labels[i];
        for (double v : rows[i]) out << ',' << format_double_12(v);
        out << '\n';
    }
}

FeatureMatrix FeatureMatrix::read_csv(const std::string& path) {
    CsvFile f = cricpred::read_csv(path);
    if (f.header.size() < 4 || f.header[0] != "match_id" || f.header[1] != "season" ||
        f.header[2] != "date" || f.header[3] != "label") {
        throw DataError(path + ":1: expected header starting match_id,season,date,label");
    }
    FeatureMatrix m;
    m.columns.assign(f.header.begin() + 4, f.header.end());
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        CsvRow row(f, i);
        m.match_ids.push_back(row.raw(0));
        m.seasons.push_back(static_cast<int>(row.get_int(1)));
        m.dates.push_back(row.get_date(2));
        m.labels.push_back(static_cast<int>(row.get_int(3)));
        std::vector<double> vals;
        vals.reserve(m.columns.size());
        for (std::size_t c = 4; c < f.header.size(); ++c) vals.push_back(row.get_double(c));
        m.rows.push_back(std::move(vals));
    }
    return m;
}

}  // namespace cricpred
