#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cricpred/corpus.hpp"
#include "cricpred/feature_matrix.hpp"

namespace cricpred {

// Nine base statistics pooled over a team's recent games. Rates are per
// over (6 balls); averages per wicket; wicket rates per ball. Indices are
// rate-times-average composites.
struct TeamLevel1 {
    double win_pct = 0;
    double bat_run_rate = 0;
    double bowl_economy = 0;
    double bat_avg = 0;
    double bowl_avg = 0;
    double bat_wicket_rate = 0;
    double bowl_strike_rate = 0;
    double bat_index = 0;
    double bowl_index = 0;
};

// Batting-minus-bowling nets for one team. net_wicket_rate is taken as
// wicket-taking minus wicket-losing so larger is better, like the others.
struct TeamLevel2 {
    double net_run_rate = 0;
    double net_avg = 0;
    double net_wicket_rate = 0;
    double net_index = 0;
};

// Home-minus-away differences.
struct TeamLevel3 {
    double win_pct_diff = 0;
    double net_run_rate_diff = 0;
    double net_avg_diff = 0;
    double net_wicket_rate_diff = 0;
    double net_index_diff = 0;
};

struct TeamFeatureConfig {
    int window = 0;        // pooled over the previous `window` games; 0 = all
    int min_history = 4;   // fewer prior games than this -> impute or drop
    bool impute = true;    // false: drop rows where either side is short

    // Cold-start fallbacks when no earlier league data exists at all.
    double fallback_run_rate = 7.5;
    double fallback_avg = 20.0;
    double fallback_wicket_rate = 7.0 / 120.0;
};

// nullopt when the team has no prior included games before as_of.
// Zero denominators are floored at 1 ball / 1 wicket so values stay finite.
std::optional<TeamLevel1> team_level1(const Corpus& corpus, const std::string& team,
                                      const Date& as_of, int window);

TeamLevel2 team_level2(const TeamLevel1& l1);

TeamLevel3 team_level3(const TeamLevel1& home_l1, const TeamLevel2& home_l2,
                       const TeamLevel1& away_l1, const TeamLevel2& away_l2);

// The canonical column bundles. `all31` is the union used for scoring.
enum class TeamFeatureSet { all31 = 0, set1 = 1, set2 = 2, set3 = 3, set4 = 4, set5 = 5, set6 = 6 };

std::vector<std::string> team_feature_names(TeamFeatureSet set);

struct TeamFeatureInfo {
    int level = 0;         // 1, 2 or 3
    std::string side;      // "home", "away" or "diff"
    std::string statistic;
};

// All 31 distinct features with their hierarchy coordinates.
const std::map<std::string, TeamFeatureInfo>& team_feature_registry();

struct TeamBuildInfo {
    int imputed_rows = 0;
    int dropped_rows = 0;
};

FeatureMatrix build_team_matrix(const Corpus& corpus, TeamFeatureSet set,
                                const TeamFeatureConfig& config = {},
                                TeamBuildInfo* info = nullptr);

// Fraction of included matches won by the home side, per season.
std::map<int, double> home_advantage_by_season(const Corpus& corpus);

}  // namespace cricpred
