#include "cricpred/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cricpred {

std::pair<std::vector<double>, std::vector<std::vector<double>>> jacobi_eigen_symmetric(
    const std::vector<std::vector<double>>& A) {
    std::size_t d = A.size();
    for (const auto& row : A) {
        if (row.size() != d) throw ConfigError("jacobi: matrix not square");
    }
    std::vector<std::vector<double>> a = A;
    std::vector<std::vector<double>> v(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) v[i][i] = 1.0;

    auto off_diag_norm = [&] {
        double s = 0;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) s += a[p][q] * a[p][q];
        }
        return std::sqrt(s);
    };

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = off_diag_norm();
        if (off < 1e-14 * (1.0 + std::fabs(a[0][0]))) break;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < d; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    double vip = v[i][p], viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i][i] > a[j][j]; });

    std::vector<double> values(d);
    std::vector<std::vector<double>> vectors(d, std::vector<double>(d));
    for (std::size_t r = 0; r < d; ++r) {
        values[r] = a[order[r]][order[r]];
        for (std::size_t i = 0; i < d; ++i) vectors[r][i] = v[i][order[r]];
        // Sign convention: largest-magnitude entry positive, for determinism.
        std::size_t arg = 0;
        for (std::size_t i = 1; i < d; ++i) {
            if (std::fabs(vectors[r][i]) > std::fabs(vectors[r][arg])) arg = i;
        }
        if (vectors[r][arg] < 0) {
            for (auto& x : vectors[r]) x = -x;
        }
    }
    return {std::move(values), std::move(vectors)};
}

PcaModel fit_pca(const Rows& X, const PcaConfig& config) {
    std::size_t n = X.size();
    if (n < 2) throw ConfigError("fit_pca: need at least 2 rows");
    std::size_t d = X[0].size();
    if (d < 1) throw ConfigError("fit_pca: need at least 1 column");
    for (const auto& row : X) {
        if (row.size() != d) throw ConfigError("fit_pca: ragged rows");
    }

    PcaModel m;
    m.mean.assign(d, 0.0);
    m.scale.assign(d, 1.0);
    for (const auto& row : X) {
        for (std::size_t j = 0; j < d; ++j) m.mean[j] += row[j];
    }
    for (auto& v : m.mean) v /= static_cast<double>(n);
    std::vector<double> var(d, 0.0);
    for (const auto& row : X) {
        for (std::size_t j = 0; j < d; ++j) {
            double c = row[j] - m.mean[j];
            var[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        var[j] /= static_cast<double>(n - 1);
        m.scale[j] = var[j] > 0 ? std::sqrt(var[j]) : 1.0;  // zero-variance guard
    }

    // Correlation matrix of the standardized data.
    std::vector<std::vector<double>> corr(d, std::vector<double>(d, 0.0));
    for (const auto& row : X) {
        std::vector<double> z(d);
        for (std::size_t j = 0; j < d; ++j) z[j] = (row[j] - m.mean[j]) / m.scale[j];
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = a; b < d; ++b) corr[a][b] += z[a] * z[b];
        }
    }
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            corr[a][b] /= static_cast<double>(n - 1);
            corr[b][a] = corr[a][b];
        }
    }

    auto [values, vectors] = jacobi_eigen_symmetric(corr);

    double total = 0;
    for (double v : values) total += std::max(v, 0.0);
    if (total <= 0) total = 1.0;

    // Drop numerically-zero directions; they carry no variance.
    double tol = 1e-12 * std::max(values.empty() ? 0.0 : values[0], 1.0);
    std::size_t rank = 0;
    while (rank < values.size() && values[rank] > tol) ++rank;
    m.rank_deficient = rank < d;

    std::size_t keep;
    if (config.k > 0) {
        keep = std::min<std::size_t>(static_cast<std::size_t>(config.k), rank);
    } else {
        double cum = 0;
        keep = 0;
        while (keep < rank) {
            cum += values[keep] / total;
            ++keep;
            if (cum >= config.variance_fraction) break;
        }
        if (keep == 0) keep = std::min<std::size_t>(1, rank);
    }

    for (std::size_t r = 0; r < keep; ++r) {
        m.components.push_back(vectors[r]);
        m.explained_variance_fraction.push_back(std::max(values[r], 0.0) / total);
    }
    return m;
}

std::vector<double> PcaModel::transform(std::span<const double> row) const {
    if (row.size() != n_inputs()) throw ConfigError("pca transform: dimension mismatch");
    std::vector<double> z(n_inputs());
    for (std::size_t j = 0; j < n_inputs(); ++j) z[j] = (row[j] - mean[j]) / scale[j];
    std::vector<double> out(components.size(), 0.0);
    for (std::size_t r = 0; r < components.size(); ++r) {
        double s = 0;
        for (std::size_t j = 0; j < z.size(); ++j) s += components[r][j] * z[j];
        out[r] = s;
    }
    return out;
}

std::vector<double> PcaModel::inverse_transform(std::span<const double> proj) const {
    if (proj.size() != components.size()) {
        throw ConfigError("pca inverse_transform: dimension mismatch");
    }
    std::vector<double> z(n_inputs(), 0.0);
    for (std::size_t r = 0; r < components.size(); ++r) {
        for (std::size_t j = 0; j < n_inputs(); ++j) z[j] += components[r][j] * proj[r];
    }
    for (std::size_t j = 0; j < n_inputs(); ++j) z[j] = z[j] * scale[j] + mean[j];
    return z;
}

Rows PcaModel::transform_rows(const Rows& X) const {
    Rows out;
    out.reserve(X.size());
    for (const auto& row : X) out.push_back(transform(row));
    return out;
}

}  // namespace cricpred
