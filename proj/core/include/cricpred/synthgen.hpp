#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cricpred/corpus.hpp"

namespace cricpred {

// Multi-season fixture generator with latent team/player skills, so the
// achievable prediction accuracy is known exactly.
struct GeneratorConfig {
    std::uint64_t seed = 1;
    int n_teams = 18;
    std::vector<int> seasons;      // e.g. 2003..2014
    int matches_per_team = 8;      // per season, round-robin style
    double home_advantage = 0.35;  // log-odds shift toward the home side
    double team_skill_spread = 0.8;
    double player_skill_spread = 0.5;
    double overseas_boost = 0.4;   // additive skill for overseas players
    int squad_size = 15;
    int overseas_per_squad = 2;

    // Anomalous seasons: home advantage sign flips (visiting sides do
    // better), or the skill-outcome relation flips (feature correlations
    // invert for that season).
    std::set<int> anomaly_seasons;
    std::set<int> skill_flip_seasons;

    double odds_noise = 0.15;  // lognormal sigma on implied probabilities
    double overround = 0.05;   // bookmaker margin
    bool with_odds = true;

    // Optional excluded-match traffic for exercising the filter rules.
    double tie_fraction = 0.0;
    double no_result_fraction = 0.0;
    bool finals_day = false;  // append 3 finals-day games per season
};

struct GroundTruth {
    std::map<std::string, double> team_skill;
    std::map<std::string, double> player_batting_skill;
    std::map<std::string, double> player_bowling_skill;
    // True home-win probability per match that received a sampled winner.
    std::map<std::string, double> p_home;
};

struct SyntheticCorpus {
    Corpus corpus;
    GroundTruth truth;
};

SyntheticCorpus generate_corpus(const GeneratorConfig& config);

// Mean over matches of max(p, 1-p): the accuracy of the oracle that
// always picks the likelier side.
double bayes_ceiling(const GroundTruth& truth);

void write_ground_truth(const std::string& path, const GroundTruth& truth);
GroundTruth read_ground_truth(const std::string& path);

}  // namespace cricpred
