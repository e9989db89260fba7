#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cricpred/pca.hpp"
#include "cricpred/tree.hpp"

namespace cricpred {

enum class ModelKind { naive_bayes, logistic_regression, random_forest, gradient_boosting };

std::string to_string(ModelKind k);
std::optional<ModelKind> parse_model_kind(const std::string& s);

struct ModelSpec {
    ModelKind kind = ModelKind::naive_bayes;
    std::map<std::string, double> hyper;
    bool use_pca = false;
    PcaConfig pca;
    std::uint64_t seed = 0;

    double hyper_or(const std::string& name, double fallback) const;

    // Throws ConfigError on hyperparameters unknown to `kind` or with
    // out-of-range values.
    void validate() const;
};

struct NaiveBayesParams {
    // event_model 0: per-class per-feature Gaussians.
    // event_model 1: per-feature quantile buckets with Laplace-smoothed
    // per-class bucket frequencies.
    int event_model = 0;
    double log_prior[2] = {0, 0};
    std::vector<double> mean[2];
    std::vector<double> var[2];
    int bins = 5;
    std::vector<std::vector<double>> boundaries;  // per feature, bins-1 upper edges
    std::vector<std::vector<double>> log_prob[2];
};

struct LogisticParams {
    std::vector<double> weights;  // original units
    double intercept = 0;
    bool converged = false;
    double grad_norm = 0;
    int iterations = 0;
};

struct ForestParams {
    std::vector<Tree> trees;
};

struct BoostParams {
    double base_score = 0;  // prior log-odds
    double learning_rate = 0.1;
    std::vector<Tree> trees;
};

// A fitted classifier with its preprocessing and the exact feature-name
// contract it was trained under.
class TrainedModel {
public:
    ModelSpec spec;
    std::vector<std::string> feature_names;
    std::optional<PcaModel> pca;
    std::variant<NaiveBayesParams, LogisticParams, ForestParams, BoostParams> params;

    // Row must be in training column order (caller's responsibility).
    double predict_proba(std::span<const double> row) const;
    int predict(std::span<const double> row) const { return predict_proba(row) >= 0.5 ? 1 : 0; }

    // Checked variants: the provided names must match training exactly.
    double predict_proba(const std::vector<std::string>& names, std::span<const double> row) const;
    void check_features(const std::vector<std::string>& names) const;
};

TrainedModel fit_model(const ModelSpec& spec, const std::vector<std::string>& feature_names,
                       const Rows& X, const std::vector<int>& y);

// Individual learners. X is the post-PCA design matrix when PCA is on;
// fit_model handles that composition.
NaiveBayesParams fit_naive_bayes(const Rows& X, const std::vector<int>& y, const ModelSpec& spec);
LogisticParams fit_logistic_regression(const Rows& X, const std::vector<int>& y,
                                       const ModelSpec& spec,
                                       std::vector<double>* objective_trace = nullptr);
ForestParams fit_random_forest(const Rows& X, const std::vector<int>& y, const ModelSpec& spec);
BoostParams fit_gradient_boosting(const Rows& X, const std::vector<int>& y, const ModelSpec& spec,
                                  std::vector<double>* loss_trace = nullptr);

// Value and gradient of the L2-regularized mean logistic loss at (w, b).
// Gradient layout: d weight entries then the intercept.
struct LrObjective {
    double value = 0;
    std::vector<double> grad;
};
LrObjective lr_objective(const Rows& X, const std::vector<int>& y, std::span<const double> w,
                         double b, double lambda);

double nb_predict_proba(const NaiveBayesParams& p, std::span<const double> row);
double lr_predict_proba(const LogisticParams& p, std::span<const double> row);
double forest_predict_proba(const ForestParams& p, std::span<const double> row);
double boost_predict_proba(const BoostParams& p, std::span<const double> row);

// Self-describing JSON document; loading restores byte-identical
// re-serialization and identical predictions.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace cricpred
