#include <algorithm>
#include <cmath>

#include "cricpred/errors.hpp"
#include "cricpred/models.hpp"
#include "cricpred/stats.hpp"

namespace cricpred {

NaiveBayesParams fit_naive_bayes(const Rows& X, const std::vector<int>& y,
                                 const ModelSpec& spec) {
    std::size_t n = X.size();
    if (n == 0 || y.size() != n) throw ConfigError("fit_naive_bayes: bad shapes");
    std::size_t d = X[0].size();
    long long n1 = 0;
    for (int v : y) n1 += v;
    if (n1 == 0 || n1 == static_cast<long long>(n)) {
        throw ConfigError("fit_naive_bayes: training set has a single class");
    }

    NaiveBayesParams p;
    p.event_model = static_cast<int>(spec.hyper_or("event_model", 0));
    double n0 = static_cast<double>(n) - static_cast<double>(n1);
    p.log_prior[0] = std::log(n0 / static_cast<double>(n));
    p.log_prior[1] = std::log(static_cast<double>(n1) / static_cast<double>(n));

    if (p.event_model == 0) {
        for (int c = 0; c < 2; ++c) {
            p.mean[c].assign(d, 0.0);
            p.var[c].assign(d, 0.0);
        }
        std::vector<double> count(2, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            int c = y[i];
            count[c] += 1.0;
            for (std::size_t j = 0; j < d; ++j) p.mean[c][j] += X[i][j];
        }
        for (int c = 0; c < 2; ++c) {
            for (std::size_t j = 0; j < d; ++j) p.mean[c][j] /= count[c];
        }
        for (std::size_t i = 0; i < n; ++i) {
            int c = y[i];
            for (std::size_t j = 0; j < d; ++j) {
                double diff = X[i][j] - p.mean[c][j];
                p.var[c][j] += diff * diff;
            }
        }
        // Variance floor keyed to the largest pooled column variance.
        std::vector<double> col_mean(d, 0.0);
        for (const auto& row : X) {
            for (std::size_t j = 0; j < d; ++j) col_mean[j] += row[j];
        }
        for (auto& v : col_mean) v /= static_cast<double>(n);
        double max_col_var = 0;
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0;
            for (const auto& row : X) {
                double diff = row[j] - col_mean[j];
                s += diff * diff;
            }
            max_col_var = std::max(max_col_var, s / static_cast<double>(n));
        }
        double floor = 1e-9 * max_col_var;
        if (floor <= 0) floor = 1e-12;
        for (int c = 0; c < 2; ++c) {
            for (std::size_t j = 0; j < d; ++j) {
                p.var[c][j] = std::max(p.var[c][j] / count[c], floor);
            }
        }
    } else if (p.event_model == 1) {
        p.bins = static_cast<int>(spec.hyper_or("bins", 5));
        if (p.bins < 2) throw ConfigError("fit_naive_bayes: bins must be >= 2");
        p.boundaries.resize(d);
        for (int c = 0; c < 2; ++c) p.log_prob[c].assign(d, {});
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<double> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = X[i][j];
            Buckets b = bucketize(col, p.bins);
            // Upper edge of each bin = its largest training value.
            std::vector<double> edge(static_cast<std::size_t>(p.bins),
                                     -std::numeric_limits<double>::infinity());
            for (std::size_t i = 0; i < n; ++i) {
                auto bin = static_cast<std::size_t>(b.bin[i]);
                edge[bin] = std::max(edge[bin], col[i]);
            }
            p.boundaries[j].assign(edge.begin(), edge.end() - 1);
            std::vector<std::vector<double>> counts(
                2, std::vector<double>(static_cast<std::size_t>(p.bins), 1.0));  // Laplace
            for (std::size_t i = 0; i < n; ++i) {
                counts[static_cast<std::size_t>(y[i])][static_cast<std::size_t>(b.bin[i])] += 1.0;
            }
            for (int c = 0; c < 2; ++c) {
                double total = 0;
                for (double v : counts[c]) total += v;
                p.log_prob[c][j].resize(static_cast<std::size_t>(p.bins));
                for (int k = 0; k < p.bins; ++k) {
                    p.log_prob[c][j][static_cast<std::size_t>(k)] =
                        std::log(counts[c][static_cast<std::size_t>(k)] / total);
                }
            }
        }
    } else {
        throw ConfigError("fit_naive_bayes: unknown event_model");
    }
    return p;
}

double nb_predict_proba(const NaiveBayesParams& p, std::span<const double> row) {
    double log_like[2] = {p.log_prior[0], p.log_prior[1]};
    if (p.event_model == 0) {
        constexpr double kLog2Pi = 1.8378770664093454836;
        for (int c = 0; c < 2; ++c) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                double diff = row[j] - p.mean[c][j];
                log_like[c] -= 0.5 * (kLog2Pi + std::log(p.var[c][j]) +
                                      diff * diff / p.var[c][j]);
            }
        }
    } else {
        for (std::size_t j = 0; j < row.size(); ++j) {
            const auto& edges = p.boundaries[j];
            std::size_t bin = 0;
            while (bin < edges.size() && row[j] > edges[bin]) ++bin;
            for (int c = 0; c < 2; ++c) log_like[c] += p.log_prob[c][j][bin];
        }
    }
    // p(1) = 1 / (1 + exp(l0 - l1)), computed in the stable direction.
    double delta = log_like[0] - log_like[1];
    if (delta > 0) {
        double e = std::exp(-delta);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(delta));
}

}  // namespace cricpred
