#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cricpred/corpus.hpp"
#include "cricpred/feature_matrix.hpp"

namespace cricpred {

// Every batting group is a contiguous run of lineup positions: the 11
// individuals, top-k prefixes, the full eleven, and seven mid-order bands.
// Bowling groups are the analogous runs over ranked slots 1..6.
struct PositionRange {
    std::string name;
    int lo = 0;
    int hi = 0;

    bool contains(int p) const { return p >= lo && p <= hi; }
};

const std::vector<PositionRange>& batting_groups();  // exactly 28
const std::vector<PositionRange>& bowling_groups();  // exactly 11

struct BattingStats {
    double average = 0;      // runs per dismissal
    double strike_rate = 0;  // runs per 100 balls
};

struct BowlingStats {
    double average = 0;      // runs per wicket
    double economy = 0;      // runs per over
    double strike_rate = 0;  // balls per wicket
};

enum class BowlStat { average = 0, economy = 1, strike_rate = 2 };

struct PlayerFeatureConfig {
    int min_matches = 4;  // batsmen with fewer prior games use imputed values
    int min_balls = 24;   // career deliveries needed to rank as a bowler

    // Cold-start constants used when no prior-season data exists at all.
    double fallback_bat_avg = 20.0;
    double fallback_bat_sr = 110.0;
    double fallback_bowl_avg = 28.0;
    double fallback_bowl_econ = 8.0;
    double fallback_bowl_sr = 21.0;

    // Replace the 28 group-average differences with differences of all 89
    // per-team level-1 features (exploratory mode; changes column counts).
    bool wide_diffs = false;
};

// Per-innings means that stand in for a new player's history. Pooling a
// cell into a group contributes one league-average innings.
struct BattingCell {
    double runs = 0;
    double dismissals = 0;
    double balls = 0;
    long long innings = 0;
};

// League averages from strictly earlier seasons, split by player class and
// batting position, plus ranked-slot bowling averages for bench fill-in.
class ImputationTable {
public:
    int up_to_year = 0;

    // Cascade: (class, position) -> (position, both classes) -> constants.
    // An unknown player class (nullopt) starts at the position-level cell.
    BattingCell batting_counts(bool overseas, int position) const;
    BattingCell batting_counts(std::optional<bool> overseas, int position) const;
    BattingStats batting(bool overseas, int position) const;
    double bowling_slot(int slot, BowlStat stat) const;  // slot 1..6

    // Accumulation (corpus scan / incremental builder).
    void add_batting_innings(bool overseas, int position, int runs, bool dismissed, int balls);
    void add_slot_observation(int slot, BowlStat stat, double value);

    PlayerFeatureConfig config;

private:
    struct RawCell {
        long long runs = 0, dismissals = 0, balls = 0, innings = 0;
    };
    RawCell by_class_pos_[2][11];
    RawCell by_pos_[11];
    struct SlotCell {
        double sum = 0;
        long long n = 0;
    };
    SlotCell slots_[6][3];
};

ImputationTable build_imputation_table(const Corpus& corpus, int up_to_year,
                                       const PlayerFeatureConfig& config = {});

// The eleven announced for one side, by batting position. Positions may be
// missing when the source scorecard is partial.
struct Lineup {
    std::string team;
    std::array<std::optional<std::string>, 11> players;  // index 0 = position 1
};

// nullopt when the side has no batting lines for the match.
std::optional<Lineup> derive_lineup(const Corpus& corpus, const MatchRecord& match,
                                    const std::string& team);

// Pooled batting stats over the group's members' prior included matches;
// members with fewer than min_matches prior games (or unknown players)
// contribute imputed per-innings counts instead.
BattingStats batting_group_stats(const Corpus& corpus, const Lineup& lineup,
                                 const PositionRange& group, const Date& as_of,
                                 const ImputationTable& imputation,
                                 const PlayerFeatureConfig& config = {});

// Career values of the lineup's eligible bowlers, ranked best-first
// (lower is better for all three stats), slotted 1..6; short slots are
// filled from the imputation table. Ties rank the heavier workload first,
// then player_id.
std::array<double, 6> bowling_slot_stats(const Corpus& corpus, const Lineup& lineup,
                                         const Date& as_of, BowlStat stat,
                                         const ImputationTable& imputation,
                                         const PlayerFeatureConfig& config = {});

// One team's 89 level-1 player features.
struct TeamPlayerLevel1 {
    std::vector<BattingStats> batting;   // 28, batting_groups() order
    std::vector<BowlingStats> bowling;   // 11, bowling_groups() order
};

TeamPlayerLevel1 team_player_level1(const Corpus& corpus, const Lineup& lineup,
                                    const Date& as_of, const ImputationTable& imputation,
                                    const PlayerFeatureConfig& config = {});

// The 100 combination metrics for one team, canonical order: per batting
// group average+strike_rate and average*strike_rate, then per bowling
// group the four average/economy/strike-rate composites.
std::vector<std::pair<std::string, double>> combination_metrics(const TeamPlayerLevel1& l1);

// 228 level-2 features: 28 home-minus-away group batting-average
// differences plus both sides' 100 combination metrics.
std::vector<std::pair<std::string, double>> player_level2_features(
    const TeamPlayerLevel1& home, const TeamPlayerLevel1& away,
    const PlayerFeatureConfig& config = {});

// 100 level-3 features: home-minus-away per combination metric.
std::vector<std::pair<std::string, double>> player_level3_features(
    const std::vector<std::pair<std::string, double>>& home_combos,
    const std::vector<std::pair<std::string, double>>& away_combos);

struct PlayerFeatureInfo {
    int level = 0;            // 1, 2 or 3
    std::string side;         // "home", "away" or "diff"
    std::string discipline;   // "batting" or "bowling"
    std::string group;
    std::string statistic;
};

// All 506 column names in matrix order with their coordinates.
const std::vector<std::pair<std::string, PlayerFeatureInfo>>& player_feature_registry();

void write_player_feature_registry(const std::string& path);

struct PlayerBuildInfo {
    int excluded_rows = 0;
    std::vector<std::string> exclusion_reasons;
};

FeatureMatrix build_player_matrix(const Corpus& corpus, const PlayerFeatureConfig& config = {},
                                  PlayerBuildInfo* info = nullptr);

}  // namespace cricpred
