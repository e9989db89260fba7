#include <algorithm>
#include <cmath>
#include <numeric>

#include "cricpred/errors.hpp"
#include "cricpred/models.hpp"
#include "cricpred/rng.hpp"

namespace cricpred {

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// Regression tree on gradient residuals, squared-error splits, Newton
// leaf values (sum residual / sum hessian).
struct ResidualTreeBuilder {
    const Rows& X;
    const std::vector<double>& residual;
    const std::vector<double>& hessian;
    int min_leaf;
    int max_depth;
    Tree tree;

    struct SplitChoice {
        int feature = -1;
        double threshold = 0;
        double score = 0;  // SSE reduction
    };

    SplitChoice best_split(const std::vector<std::size_t>& idx) const {
        long long n = static_cast<long long>(idx.size());
        double total = 0;
        for (auto i : idx) total += residual[i];
        SplitChoice best;
        double parent_score = total * total / static_cast<double>(n);

        std::size_t d = X[0].size();
        std::vector<std::pair<double, double>> vals(idx.size());  // (x, residual)
        for (std::size_t f = 0; f < d; ++f) {
            for (std::size_t k = 0; k < idx.size(); ++k) {
                vals[k] = {X[idx[k]][f], residual[idx[k]]};
            }
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double left_sum = 0;
            long long left_n = 0;
            for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
                left_sum += vals[k].second;
                ++left_n;
                if (vals[k].first == vals[k + 1].first) continue;
                long long right_n = n - left_n;
                if (left_n < min_leaf || right_n < min_leaf) continue;
                double right_sum = total - left_sum;
                double gain = left_sum * left_sum / static_cast<double>(left_n) +
                              right_sum * right_sum / static_cast<double>(right_n) - parent_score;
                if (gain > best.score + 1e-12) {
                    best.score = gain;
                    best.feature = static_cast<int>(f);
                    best.threshold = (vals[k].first + vals[k + 1].first) / 2.0;
                }
            }
        }
        return best;
    }

    int build(const std::vector<std::size_t>& idx, int depth) {
        auto make_leaf = [&] {
            double g = 0, h = 0;
            for (auto i : idx) {
                g += residual[i];
                h += hessian[i];
            }
            TreeNode leaf;
            leaf.value = g / (h + 1e-12);
            tree.nodes.push_back(leaf);
            return static_cast<int>(tree.nodes.size() - 1);
        };

        if (static_cast<int>(idx.size()) < 2 * min_leaf) return make_leaf();
        if (max_depth > 0 && depth >= max_depth) return make_leaf();
        SplitChoice split = best_split(idx);
        if (split.feature < 0) return make_leaf();

        std::vector<std::size_t> left, right;
        for (auto i : idx) {
            if (X[i][static_cast<std::size_t>(split.feature)] <= split.threshold) {
                left.push_back(i);
            } else {
                right.push_back(i);
            }
        }
        int node = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({split.feature, split.threshold, -1, -1, 0});
        tree.nodes[static_cast<std::size_t>(node)].left = build(left, depth + 1);
        tree.nodes[static_cast<std::size_t>(node)].right = build(right, depth + 1);
        return node;
    }
};

}  // namespace

BoostParams fit_gradient_boosting(const Rows& X, const std::vector<int>& y, const ModelSpec& spec,
                                  std::vector<double>* loss_trace) {
    std::size_t n = X.size();
    if (n < 2 || y.size() != n) throw ConfigError("fit_gradient_boosting: need at least 2 rows");

    int n_rounds = static_cast<int>(spec.hyper_or("n_rounds", 200));
    double learning_rate = spec.hyper_or("learning_rate", 0.1);
    int max_depth = static_cast<int>(spec.hyper_or("max_depth", 3));
    int min_leaf = static_cast<int>(spec.hyper_or("min_samples_leaf", 1));
    double subsample = spec.hyper_or("subsample", 1.0);
    if (n_rounds < 0) throw ConfigError("fit_gradient_boosting: n_rounds must be >= 0");
    if (learning_rate <= 0) throw ConfigError("fit_gradient_boosting: learning_rate must be > 0");
    if (subsample <= 0 || subsample > 1.0) {
        throw ConfigError("fit_gradient_boosting: subsample must be in (0, 1]");
    }

    long long n1 = 0;
    for (int v : y) n1 += v;
    double p1 = static_cast<double>(n1) / static_cast<double>(n);
    p1 = std::clamp(p1, 1e-6, 1.0 - 1e-6);

    BoostParams params;
    params.base_score = std::log(p1 / (1.0 - p1));
    params.learning_rate = learning_rate;

    std::vector<double> score(n, params.base_score);
    std::vector<double> residual(n), hessian(n);

    auto mean_log_loss = [&] {
        double loss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double z = score[i];
            double l = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
            loss += l - static_cast<double>(y[i]) * z;
        }
        return loss / static_cast<double>(n);
    };
    if (loss_trace) loss_trace->push_back(mean_log_loss());

    for (int round = 0; round < n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            double p = sigmoid(score[i]);
            residual[i] = static_cast<double>(y[i]) - p;
            hessian[i] = std::max(p * (1.0 - p), 1e-16);
        }

        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        if (subsample < 1.0) {
            std::mt19937_64 rng = seeded_engine(spec.seed, static_cast<std::uint64_t>(round));
            std::size_t take = std::max<std::size_t>(
                1, static_cast<std::size_t>(subsample * static_cast<double>(n)));
            for (std::size_t i = 0; i < take; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, n - 1);
                std::swap(idx[i], idx[pick(rng)]);
            }
            idx.resize(take);
            std::sort(idx.begin(), idx.end());
        }

        ResidualTreeBuilder builder{X, residual, hessian, min_leaf, max_depth, {}};
        builder.build(idx, 0);
        Tree tree = std::move(builder.tree);

        for (std::size_t i = 0; i < n; ++i) {
            score[i] += learning_rate * tree.predict(X[i]);
        }
        params.trees.push_back(std::move(tree));
        if (loss_trace) loss_trace->push_back(mean_log_loss());
    }
    return params;
}

double boost_predict_proba(const BoostParams& p, std::span<const double> row) {
    double z = p.base_score;
    for (const auto& t : p.trees) z += p.learning_rate * t.predict(row);
    return sigmoid(z);
}

}  // namespace cricpred
