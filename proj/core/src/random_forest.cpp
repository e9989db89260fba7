#include <algorithm>
#include <cmath>
#include <numeric>

#include "cricpred/errors.hpp"
#include "cricpred/models.hpp"
#include "cricpred/rng.hpp"

namespace cricpred {

namespace {

struct SplitChoice {
    int feature = -1;
    double threshold = 0;
    double score = -1;  // weighted gini decrease
};

struct TreeBuilder {
    const Rows& X;
    const std::vector<int>& y;
    int mtry;
    int min_leaf;
    int max_depth;  // 0 = unlimited
    std::mt19937_64& rng;
    Tree tree;

    double gini(long long c1, long long n) const {
        if (n == 0) return 0;
        double p1 = static_cast<double>(c1) / static_cast<double>(n);
        double p0 = 1.0 - p1;
        return 1.0 - p0 * p0 - p1 * p1;
    }

    std::vector<int> sample_features() {
        std::size_t d = X[0].size();
        std::vector<int> all(d);
        std::iota(all.begin(), all.end(), 0);
        int take = std::min<int>(mtry, static_cast<int>(d));
        for (int i = 0; i < take; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, d - 1);
            std::swap(all[static_cast<std::size_t>(i)], all[pick(rng)]);
        }
        std::vector<int> chosen(all.begin(), all.begin() + take);
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }

    SplitChoice best_split(const std::vector<std::size_t>& idx) {
        long long n = static_cast<long long>(idx.size());
        long long c1 = 0;
        for (auto i : idx) c1 += y[i];
        double parent = gini(c1, n);
        SplitChoice best;
        if (parent <= 0) return best;

        std::vector<std::pair<double, int>> vals(idx.size());
        for (int f : sample_features()) {
            for (std::size_t k = 0; k < idx.size(); ++k) {
                vals[k] = {X[idx[k]][static_cast<std::size_t>(f)], y[idx[k]]};
            }
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            long long left_n = 0, left_c1 = 0;
            for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
                ++left_n;
                left_c1 += vals[k].second;
                if (vals[k].first == vals[k + 1].first) continue;
                long long right_n = n - left_n;
                if (left_n < min_leaf || right_n < min_leaf) continue;
                double w_impurity =
                    (static_cast<double>(left_n) * gini(left_c1, left_n) +
                     static_cast<double>(right_n) * gini(c1 - left_c1, right_n)) /
                    static_cast<double>(n);
                double gain = parent - w_impurity;
                if (gain > best.score) {
                    best.score = gain;
                    best.feature = f;
                    best.threshold = (vals[k].first + vals[k + 1].first) / 2.0;
                }
            }
        }
        if (best.score <= 0) best.feature = -1;
        return best;
    }

    int build(const std::vector<std::size_t>& idx, int depth) {
        long long c1 = 0;
        for (auto i : idx) c1 += y[i];
        long long n = static_cast<long long>(idx.size());

        auto make_leaf = [&] {
            TreeNode leaf;
            leaf.value = (2 * c1 >= n) ? 1.0 : 0.0;  // majority, ties to 1
            tree.nodes.push_back(leaf);
            return static_cast<int>(tree.nodes.size() - 1);
        };

        if (c1 == 0 || c1 == n) return make_leaf();
        if (n < 2 * min_leaf) return make_leaf();
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

ForestParams fit_random_forest(const Rows& X, const std::vector<int>& y, const ModelSpec& spec) {
    std::size_t n = X.size();
    if (n < 2 || y.size() != n) throw ConfigError("fit_random_forest: need at least 2 rows");
    std::size_t d = X[0].size();

    int n_trees = static_cast<int>(spec.hyper_or("n_trees", 200));
    int min_leaf = static_cast<int>(spec.hyper_or("min_samples_leaf", 1));
    int max_depth = static_cast<int>(spec.hyper_or("max_depth", 0));
    bool bootstrap = spec.hyper_or("bootstrap", 1) != 0;
    int mtry = static_cast<int>(spec.hyper_or("mtry", 0));
    if (mtry <= 0) mtry = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
    if (n_trees < 1) throw ConfigError("fit_random_forest: n_trees must be >= 1");
    if (min_leaf < 1) throw ConfigError("fit_random_forest: min_samples_leaf must be >= 1");

    ForestParams params;
    params.trees.reserve(static_cast<std::size_t>(n_trees));
    for (int t = 0; t < n_trees; ++t) {
        // Per-tree stream keyed by tree index, never by scheduling order.
        std::mt19937_64 rng = seeded_engine(spec.seed, static_cast<std::uint64_t>(t));
        std::vector<std::size_t> idx;
        idx.reserve(n);
        if (bootstrap) {
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            for (std::size_t i = 0; i < n; ++i) idx.push_back(pick(rng));
        } else {
            idx.resize(n);
            std::iota(idx.begin(), idx.end(), 0);
        }
        TreeBuilder builder{X, y, mtry, min_leaf, max_depth, rng, {}};
        builder.build(idx, 0);
        params.trees.push_back(std::move(builder.tree));
    }
    return params;
}

double forest_predict_proba(const ForestParams& p, std::span<const double> row) {
    double votes = 0;
    for (const auto& t : p.trees) votes += t.predict(row);
    return votes / static_cast<double>(p.trees.size());
}

}  // namespace cricpred
