#include "cricpred/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "cricpred/csv.hpp"

namespace cricpred {

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ConfigError("pearson: length mismatch");
    std::size_t n = x.size();
    if (n < 2) throw ConfigError("pearson: need at least 2 observations");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

Buckets bucketize(std::span<const double> x, int bins) {
    if (bins < 2) throw ConfigError("bucketize: bins must be >= 2");
    std::size_t n = x.size();
    Buckets out;
    out.bin.assign(n, 0);
    if (n == 0) {
        out.degenerate = true;
        return out;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    // Provisional equal-frequency bin by rank, then collapse runs of equal
    // values onto the run's lowest bin so boundary ties land low.
    std::vector<int> by_rank(n);
    for (std::size_t r = 0; r < n; ++r) {
        by_rank[r] = static_cast<int>(r * static_cast<std::size_t>(bins) / n);
    }
    std::size_t r = 0;
    while (r < n) {
        std::size_t run_end = r;
        while (run_end < n && x[order[run_end]] == x[order[r]]) ++run_end;
        for (std::size_t k = r; k < run_end; ++k) by_rank[k] = by_rank[r];
        r = run_end;
    }
    std::set<int> used;
    for (std::size_t rr = 0; rr < n; ++rr) {
        out.bin[order[rr]] = by_rank[rr];
        used.insert(by_rank[rr]);
    }
    out.n_bins = static_cast<int>(used.size());
    out.degenerate = out.n_bins < bins;
    return out;
}

namespace {

// K x C counts over small nonnegative label spaces.
struct Table {
    std::vector<int> x_values, y_values;
    std::vector<std::vector<long long>> counts;  // [xi][yi]
    std::vector<long long> x_margin, y_margin;
    long long total = 0;
};

Table contingency(std::span<const int> xb, std::span<const int> yb) {
    if (xb.size() != yb.size()) throw ConfigError("contingency: length mismatch");
    std::set<int> xs(xb.begin(), xb.end());
    std::set<int> ys(yb.begin(), yb.end());
    Table t;
    t.x_values.assign(xs.begin(), xs.end());
    t.y_values.assign(ys.begin(), ys.end());
    auto xi = [&](int v) {
        return std::lower_bound(t.x_values.begin(), t.x_values.end(), v) - t.x_values.begin();
    };
    auto yi = [&](int v) {
        return std::lower_bound(t.y_values.begin(), t.y_values.end(), v) - t.y_values.begin();
    };
    t.counts.assign(t.x_values.size(), std::vector<long long>(t.y_values.size(), 0));
    t.x_margin.assign(t.x_values.size(), 0);
    t.y_margin.assign(t.y_values.size(), 0);
    for (std::size_t i = 0; i < xb.size(); ++i) {
        auto a = xi(xb[i]);
        auto b = yi(yb[i]);
        ++t.counts[a][b];
        ++t.x_margin[a];
        ++t.y_margin[b];
        ++t.total;
    }
    return t;
}

}  // namespace

double mutual_information(std::span<const int> xb, std::span<const int> yb) {
    Table t = contingency(xb, yb);
    if (t.total == 0) return 0.0;
    double n = static_cast<double>(t.total);
    double mi = 0;
    for (std::size_t a = 0; a < t.x_values.size(); ++a) {
        for (std::size_t b = 0; b < t.y_values.size(); ++b) {
            long long c = t.counts[a][b];
            if (c == 0) continue;  // 0 log 0 := 0
            double pxy = static_cast<double>(c) / n;
            double px = static_cast<double>(t.x_margin[a]) / n;
            double py = static_cast<double>(t.y_margin[b]) / n;
            mi += pxy * std::log2(pxy / (px * py));
        }
    }
    return mi;
}

std::optional<ChiSquareResult> chi_square(std::span<const int> xb, std::span<const int> yb) {
    Table t = contingency(xb, yb);
    // Empty rows/columns never appear (only observed values are tabled),
    // so degeneracy means a single row or single column.
    if (t.x_values.size() < 2 || t.y_values.size() < 2) return std::nullopt;
    double n = static_cast<double>(t.total);
    double stat = 0;
    for (std::size_t a = 0; a < t.x_values.size(); ++a) {
        for (std::size_t b = 0; b < t.y_values.size(); ++b) {
            double expected =
                static_cast<double>(t.x_margin[a]) * static_cast<double>(t.y_margin[b]) / n;
            double diff = static_cast<double>(t.counts[a][b]) - expected;
            stat += diff * diff / expected;
        }
    }
    ChiSquareResult r;
    r.statistic = stat;
    r.dof = static_cast<int>((t.x_values.size() - 1) * (t.y_values.size() - 1));
    r.p_value = regularized_gamma_q(static_cast<double>(r.dof) / 2.0, stat / 2.0);
    return r;
}

namespace {

constexpr int kGammaMaxIter = 500;
constexpr double kGammaEps = 1e-16;

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kGammaMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kGammaEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kGammaMaxIter; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kGammaEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw ConfigError("regularized_gamma_p: domain error");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw ConfigError("regularized_gamma_q: domain error");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

std::string to_string(ScoreMetric m) {
    switch (m) {
        case ScoreMetric::pearson: return "pearson";
        case ScoreMetric::mutual_information: return "mutual_information";
        case ScoreMetric::chi_square_p: return "chi_square_p";
    }
    return "?";
}

std::optional<ScoreMetric> parse_metric(const std::string& s) {
    if (s == "pearson") return ScoreMetric::pearson;
    if (s == "mutual_information" || s == "mi") return ScoreMetric::mutual_information;
    if (s == "chi_square_p" || s == "chi2") return ScoreMetric::chi_square_p;
    return std::nullopt;
}

std::vector<FeatureScore> score_by_year(const FeatureMatrix& matrix, ScoreMetric metric,
                                        int bins) {
    auto years = matrix.distinct_seasons();
    if (years.size() < 2) {
        throw ConfigError("score_by_year: need at least 2 seasons, got " +
                          std::to_string(years.size()));
    }

    std::map<int, std::vector<std::size_t>> rows_by_year;
    for (std::size_t i = 0; i < matrix.n_rows(); ++i) {
        rows_by_year[matrix.seasons[i]].push_back(i);
    }

    std::vector<FeatureScore> out;
    out.reserve(matrix.n_cols());
    for (std::size_t c = 0; c < matrix.n_cols(); ++c) {
        FeatureScore score;
        score.feature = matrix.columns[c];
        score.metric = metric;
        for (int year : years) {
            const auto& rows = rows_by_year[year];
            std::vector<double> x;
            std::vector<double> yd;
            std::vector<int> yi;
            x.reserve(rows.size());
            for (auto r : rows) {
                x.push_back(matrix.rows[r][c]);
                yd.push_back(static_cast<double>(matrix.labels[r]));
                yi.push_back(matrix.labels[r]);
            }
            std::optional<double> value;
            if (x.size() >= 2) {
                switch (metric) {
                    case ScoreMetric::pearson:
                        value = pearson(x, yd);
                        break;
                    case ScoreMetric::mutual_information: {
                        Buckets b = bucketize(x, bins);
                        value = mutual_information(b.bin, yi);
                        break;
                    }
                    case ScoreMetric::chi_square_p: {
                        Buckets b = bucketize(x, bins);
                        auto r2 = chi_square(b.bin, yi);
                        if (r2) value = r2->p_value;
                        break;
                    }
                }
            }
            score.per_year[year] = value;
        }
        double sum = 0;
        int n = 0;
        for (const auto& [year, v] : score.per_year) {
            if (v) {
                sum += *v;
                ++n;
            }
        }
        score.defined_years = n;
        if (n > 0) {
            score.mean = sum / n;
            double ss = 0;
            for (const auto& [year, v] : score.per_year) {
                if (v) {
                    double d = *v - score.mean;
                    ss += d * d;
                }
            }
            score.variance = ss / n;
        }
        out.push_back(std::move(score));
    }
    return out;
}

void write_scores_csv(const std::string& path, const std::vector<FeatureScore>& scores) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    std::set<int> years;
    for (const auto& s : scores) {
        for (const auto& [y, _] : s.per_year) years.insert(y);
    }
    out << "feature,metric,mean,variance";
    for (int y : years) out << ',' << y;
    out << '\n';
    for (const auto& s : scores) {
        out << s.feature << ',' << to_string(s.metric) << ',' << format_double_12(s.mean) << ','
            << format_double_12(s.variance);
        for (int y : years) {
            out << ',';
            auto it = s.per_year.find(y);
            if (it != s.per_year.end() && it->second) out << format_double_12(*it->second);
        }
        out << '\n';
    }
}

}  // namespace cricpred
