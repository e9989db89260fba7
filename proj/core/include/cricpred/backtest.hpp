#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cricpred/corpus.hpp"
#include "cricpred/feature_matrix.hpp"
#include "cricpred/models.hpp"
#include "cricpred/player_features.hpp"
#include "cricpred/team_features.hpp"

namespace cricpred {

// Which design matrix the backtest runs on.
struct FeaturePlan {
    enum class Mode { team, player, combined };
    Mode mode = Mode::team;
    TeamFeatureSet team_set = TeamFeatureSet::set6;
    TeamFeatureConfig team_config;
    PlayerFeatureConfig player_config;
    // Optional final column restriction (e.g. an RFE-selected subset).
    std::vector<std::string> restrict_columns;

    std::string describe() const;
};

FeatureMatrix build_features(const Corpus& corpus, const FeaturePlan& plan);

struct SplitPlan {
    struct Pair {
        int test_season = 0;
        std::vector<int> train_seasons;  // ascending
    };
    std::vector<Pair> pairs;
    int window_seasons = 0;  // 0 = all prior seasons
};

// One train/test pair per test season: train on all prior seasons
// (window 0) or the last `window` of them. Throws DataError when a test
// season has no prior data.
SplitPlan rolling_splits(const std::vector<int>& seasons_present,
                         const std::vector<int>& test_seasons, int window_seasons);

struct MatchPrediction {
    std::string match_id;
    int season = 0;
    Date date;
    double p_home = 0;
    int predicted = 0;
    int actual = 0;

    bool correct() const { return predicted == actual; }
};

struct SeasonAccuracy {
    int n = 0;
    int correct = 0;

    double accuracy() const { return n == 0 ? 0.0 : static_cast<double>(correct) / n; }
};

struct BacktestReport {
    std::map<int, SeasonAccuracy> per_season;
    int total_n = 0;
    int total_correct = 0;
    double overall_accuracy = 0;
    std::vector<MatchPrediction> records;              // (date, match_id) order
    std::map<int, std::vector<double>> cumulative;     // per test season
    std::string feature_description;
    std::string model_kind;
    std::uint64_t seed = 0;
    int window_seasons = 0;
    std::vector<int> test_seasons;
};

BacktestReport run_backtest(const Corpus& corpus, const FeaturePlan& features,
                            const ModelSpec& model, const SplitPlan& splits);

// element k = correct among first k+1 / (k+1); input must be date-ordered.
std::vector<double> cumulative_accuracy(const std::vector<MatchPrediction>& records);

struct BenchmarkSeason {
    int scored = 0;     // matches with a strict favorite and known outcome
    int correct = 0;    // favorite won
    int included = 0;   // included matches that season
    std::optional<double> accuracy() const {
        if (scored == 0) return std::nullopt;
        return static_cast<double>(correct) / scored;
    }
    double coverage() const {
        return included == 0 ? 0.0 : static_cast<double>(scored) / included;
    }
};

struct BenchmarkResult {
    std::map<int, BenchmarkSeason> per_season;
    // Match ids the benchmark scored, for paired comparisons.
    std::vector<std::string> scored_matches;

    std::optional<double> overall_accuracy() const;
};

// Favorite = strictly lower decimal odds; equal or missing odds skip the
// match. Coverage is reported so sparse odds stay visible.
BenchmarkResult odds_benchmark(const Corpus& corpus);

struct ComparisonRow {
    int season = 0;
    // Paired view: both sides restricted to benchmark-scored matches.
    std::optional<double> model_paired;
    std::optional<double> favorite;
    std::optional<double> difference;
    int n_paired = 0;
    // All-matches view of the model.
    double model_all = 0;
    int n_all = 0;
};

std::vector<ComparisonRow> compare(const BacktestReport& report, const BenchmarkResult& benchmark);

// report.json (full document, config echo included), report.csv flat rows.
void write_report_json(const std::string& path, const BacktestReport& report,
                       const std::map<std::string, std::string>& config_echo);
void write_report_csv(const std::string& path, const BacktestReport& report);
BacktestReport read_report_json(const std::string& path);

}  // namespace cricpred
