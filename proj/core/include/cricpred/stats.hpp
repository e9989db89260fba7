#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cricpred/feature_matrix.hpp"

namespace cricpred {

// Product-moment correlation. nullopt when either vector has zero variance
// (an undefined score must stay distinguishable from a true 0).
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct Buckets {
    std::vector<int> bin;  // per element, 0-based
    int n_bins = 0;        // distinct bins actually used
    bool degenerate = false;
};

// Equal-frequency (quantile) bins; equal values always share the bin of
// the lowest-ranked duplicate.
Buckets bucketize(std::span<const double> x, int bins);

// Mutual information of the empirical joint distribution, in bits.
double mutual_information(std::span<const int> xb, std::span<const int> yb);

struct ChiSquareResult {
    double statistic = 0;
    double p_value = 1;
    int dof = 0;
};

// Pearson chi-square over the K x 2 contingency table (empty rows
// collapsed). nullopt when the table degenerates to a single row or a
// single outcome column.
std::optional<ChiSquareResult> chi_square(std::span<const int> xb, std::span<const int> yb);

// Regularized incomplete gamma functions (series / continued fraction).
double regularized_gamma_p(double a, double x);  // P(a, x), lower
double regularized_gamma_q(double a, double x);  // Q(a, x), upper

enum class ScoreMetric { pearson, mutual_information, chi_square_p };

std::string to_string(ScoreMetric m);
std::optional<ScoreMetric> parse_metric(const std::string& s);

struct FeatureScore {
    std::string feature;
    ScoreMetric metric = ScoreMetric::pearson;
    std::map<int, std::optional<double>> per_year;
    double mean = 0;
    double variance = 0;  // population variance over defined years
    int defined_years = 0;
};

// Scores every feature within each season separately. MI and chi-square
// operate on per-season quantile buckets of the feature. Requires at
// least two seasons.
std::vector<FeatureScore> score_by_year(const FeatureMatrix& matrix, ScoreMetric metric,
                                        int bins = 5);

// scores.csv: feature,metric,mean,variance,<year columns>
void write_scores_csv(const std::string& path, const std::vector<FeatureScore>& scores);

}  // namespace cricpred
