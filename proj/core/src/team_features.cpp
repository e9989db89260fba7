#include "cricpred/team_features.hpp"

#include <algorithm>
#include <cassert>

namespace cricpred {

namespace {

struct GameTotals {
    long long runs_for = 0, balls_for = 0, wkts_lost = 0;
    long long runs_against = 0, balls_bowled = 0, wkts_taken = 0;
    int games = 0, wins = 0;

    void add_match(const MatchRecord& m, bool as_home) {
        int rf = as_home ? m.home_runs : m.away_runs;
        int bf = as_home ? m.home_balls : m.away_balls;
        int wl = as_home ? m.home_wickets : m.away_wickets;
        int ra = as_home ? m.away_runs : m.home_runs;
        int bb = as_home ? m.away_balls : m.home_balls;
        int wt = as_home ? m.away_wickets : m.home_wickets;
        runs_for += rf;
        balls_for += bf;
        wkts_lost += wl;
        runs_against += ra;
        balls_bowled += bb;
        wkts_taken += wt;
        ++games;
        bool won = (m.outcome == Outcome::home_win) == as_home;
        if (won) ++wins;
    }
};

double floored(long long denom) { return denom > 0 ? static_cast<double>(denom) : 1.0; }

TeamLevel1 level1_from_totals(const GameTotals& t) {
    TeamLevel1 l1;
    l1.win_pct = static_cast<double>(t.wins) / static_cast<double>(t.games);
    l1.bat_run_rate = 6.0 * static_cast<double>(t.runs_for) / floored(t.balls_for);
    l1.bowl_economy = 6.0 * static_cast<double>(t.runs_against) / floored(t.balls_bowled);
    l1.bat_avg = static_cast<double>(t.runs_for) / floored(t.wkts_lost);
    l1.bowl_avg = static_cast<double>(t.runs_against) / floored(t.wkts_taken);
    l1.bat_wicket_rate = static_cast<double>(t.wkts_lost) / floored(t.balls_for);
    l1.bowl_strike_rate = static_cast<double>(t.wkts_taken) / floored(t.balls_bowled);
    l1.bat_index = l1.bat_run_rate * l1.bat_avg;
    l1.bowl_index = l1.bowl_economy * l1.bowl_avg;
    return l1;
}

// League-wide pooled level 1: a hypothetical average team. Batting and
// bowling pools coincide, so every net feature of an imputed side is 0.
TeamLevel1 league_mean_level1(long long runs, long long balls, long long wkts, int innings,
                              const TeamFeatureConfig& cfg) {
    TeamLevel1 l1;
    if (innings == 0) {
        l1.win_pct = 0.5;
        l1.bat_run_rate = l1.bowl_economy = cfg.fallback_run_rate;
        l1.bat_avg = l1.bowl_avg = cfg.fallback_avg;
        l1.bat_wicket_rate = l1.bowl_strike_rate = cfg.fallback_wicket_rate;
    } else {
        l1.win_pct = 0.5;
        l1.bat_run_rate = l1.bowl_economy = 6.0 * static_cast<double>(runs) / floored(balls);
        l1.bat_avg = l1.bowl_avg = static_cast<double>(runs) / floored(wkts);
        l1.bat_wicket_rate = l1.bowl_strike_rate = static_cast<double>(wkts) / floored(balls);
    }
    l1.bat_index = l1.bat_run_rate * l1.bat_avg;
    l1.bowl_index = l1.bowl_economy * l1.bowl_avg;
    return l1;
}

const std::vector<std::pair<std::string, TeamFeatureInfo>>& registry_ordered() {
    static const std::vector<std::pair<std::string, TeamFeatureInfo>> reg = [] {
        std::vector<std::pair<std::string, TeamFeatureInfo>> r;
        const char* l1_stats[] = {"win_pct",         "bat_run_rate", "bowl_economy",
                                  "bat_avg",         "bowl_avg",     "bat_wicket_rate",
                                  "bowl_strike_rate", "bat_index",    "bowl_index"};
        for (const char* s : l1_stats) {
            r.push_back({std::string("home_") + s, {1, "home", s}});
            r.push_back({std::string("away_") + s, {1, "away", s}});
        }
        const char* l2_stats[] = {"net_run_rate", "net_avg", "net_wicket_rate", "net_index"};
        for (const char* s : l2_stats) {
            r.push_back({std::string("home_") + s, {2, "home", s}});
            r.push_back({std::string("away_") + s, {2, "away", s}});
        }
        const char* l3_stats[] = {"win_pct_diff", "net_run_rate_diff", "net_avg_diff",
                                  "net_wicket_rate_diff", "net_index_diff"};
        for (const char* s : l3_stats) {
            r.push_back({std::string(s), {3, "diff", s}});
        }
        return r;
    }();
    return reg;
}

}  // namespace

const std::map<std::string, TeamFeatureInfo>& team_feature_registry() {
    static const std::map<std::string, TeamFeatureInfo> reg = [] {
        std::map<std::string, TeamFeatureInfo> m;
        for (const auto& [name, info] : registry_ordered()) m.emplace(name, info);
        return m;
    }();
    return reg;
}

std::vector<std::string> team_feature_names(TeamFeatureSet set) {
    auto both = [](const char* stat) {
        return std::vector<std::string>{std::string("home_") + stat, std::string("away_") + stat};
    };
    std::vector<std::string> names;
    auto append = [&](const std::vector<std::string>& v) {
        names.insert(names.end(), v.begin(), v.end());
    };
    switch (set) {
        case TeamFeatureSet::all31: {
            for (const auto& [name, info] : registry_ordered()) names.push_back(name);
            break;
        }
        case TeamFeatureSet::set1:
        case TeamFeatureSet::set2: {
            append(both("win_pct"));
            append(both("bat_run_rate"));
            append(both("bowl_economy"));
            append(both("bat_avg"));
            append(both("bowl_avg"));
            append(both("bat_wicket_rate"));
            append(both("bowl_strike_rate"));
            if (set == TeamFeatureSet::set2) {
                append(both("bat_index"));
                append(both("bowl_index"));
            }
            break;
        }
        case TeamFeatureSet::set3:
        case TeamFeatureSet::set4: {
            append(both("win_pct"));
            append(both("net_run_rate"));
            append(both("net_avg"));
            append(both("net_wicket_rate"));
            if (set == TeamFeatureSet::set4) append(both("net_index"));
            break;
        }
        case TeamFeatureSet::set5:
        case TeamFeatureSet::set6: {
            names = {"win_pct_diff", "net_run_rate_diff", "net_avg_diff", "net_wicket_rate_diff"};
            if (set == TeamFeatureSet::set6) names.push_back("net_index_diff");
            break;
        }
    }
    return names;
}

std::optional<TeamLevel1> team_level1(const Corpus& corpus, const std::string& team,
                                      const Date& as_of, int window) {
    auto hist = history_before(corpus, team, as_of, window);
    if (hist.empty()) return std::nullopt;
    GameTotals t;
    for (auto idx : hist) {
        const MatchRecord& m = corpus.matches()[idx];
        t.add_match(m, m.home_team == team);
    }
    return level1_from_totals(t);
}

TeamLevel2 team_level2(const TeamLevel1& l1) {
    TeamLevel2 l2;
    l2.net_run_rate = l1.bat_run_rate - l1.bowl_economy;
    l2.net_avg = l1.bat_avg - l1.bowl_avg;
    l2.net_wicket_rate = l1.bowl_strike_rate - l1.bat_wicket_rate;
    l2.net_index = l1.bat_index - l1.bowl_index;
    return l2;
}

TeamLevel3 team_level3(const TeamLevel1& home_l1, const TeamLevel2& home_l2,
                       const TeamLevel1& away_l1, const TeamLevel2& away_l2) {
    TeamLevel3 l3;
    l3.win_pct_diff = home_l1.win_pct - away_l1.win_pct;
    l3.net_run_rate_diff = home_l2.net_run_rate - away_l2.net_run_rate;
    l3.net_avg_diff = home_l2.net_avg - away_l2.net_avg;
    l3.net_wicket_rate_diff = home_l2.net_wicket_rate - away_l2.net_wicket_rate;
    l3.net_index_diff = home_l2.net_index - away_l2.net_index;
    return l3;
}

FeatureMatrix build_team_matrix(const Corpus& corpus, TeamFeatureSet set,
                                const TeamFeatureConfig& config, TeamBuildInfo* info) {
    FeatureMatrix out;
    out.columns = team_feature_names(set);

    // Running state, advanced one date group at a time so that matches on
    // the same day never see each other.
    std::map<std::string, std::vector<GameTotals>> team_games;  // per-game rows, chronological
    long long league_runs = 0, league_balls = 0, league_wkts = 0;
    int league_innings = 0;

    struct SideResult {
        std::optional<TeamLevel1> level1;
        bool imputed = false;
    };
    auto side_level1 = [&](const std::string& team) -> SideResult {
        auto it = team_games.find(team);
        std::size_t n = it == team_games.end() ? 0 : it->second.size();
        if (static_cast<int>(n) < config.min_history) {
            if (!config.impute) return {std::nullopt, false};
            return {league_mean_level1(league_runs, league_balls, league_wkts, league_innings,
                                       config),
                    true};
        }
        GameTotals pooled;
        std::size_t start = 0;
        if (config.window > 0 && n > static_cast<std::size_t>(config.window)) {
            start = n - static_cast<std::size_t>(config.window);
        }
        const auto& games = it->second;
        for (std::size_t i = start; i < n; ++i) {
            const GameTotals& g = games[i];
            pooled.runs_for += g.runs_for;
            pooled.balls_for += g.balls_for;
            pooled.wkts_lost += g.wkts_lost;
            pooled.runs_against += g.runs_against;
            pooled.balls_bowled += g.balls_bowled;
            pooled.wkts_taken += g.wkts_taken;
            pooled.games += g.games;
            pooled.wins += g.wins;
        }
        return {level1_from_totals(pooled), false};
    };

    const auto& inc = corpus.included_indices();
    std::size_t i = 0;
    while (i < inc.size()) {
        std::size_t group_end = i;
        const Date day = corpus.matches()[inc[i]].date;
        while (group_end < inc.size() && corpus.matches()[inc[group_end]].date == day) {
            ++group_end;
        }

        for (std::size_t k = i; k < group_end; ++k) {
            const MatchRecord& m = corpus.matches()[inc[k]];
            SideResult home_side = side_level1(m.home_team);
            SideResult away_side = side_level1(m.away_team);
            if (!home_side.level1 || !away_side.level1) {
                if (info) ++info->dropped_rows;
                continue;
            }
            if ((home_side.imputed || away_side.imputed) && info) ++info->imputed_rows;
            const TeamLevel1& home_l1 = *home_side.level1;
            const TeamLevel1& away_l1 = *away_side.level1;

            TeamLevel2 home_l2 = team_level2(home_l1);
            TeamLevel2 away_l2 = team_level2(away_l1);
            TeamLevel3 l3 = team_level3(home_l1, home_l2, away_l1, away_l2);

            std::map<std::string, double> v;
            auto put_side = [&](const std::string& side, const TeamLevel1& l1,
                                const TeamLevel2& l2) {
                v[side + "_win_pct"] = l1.win_pct;
                v[side + "_bat_run_rate"] = l1.bat_run_rate;
                v[side + "_bowl_economy"] = l1.bowl_economy;
                v[side + "_bat_avg"] = l1.bat_avg;
                v[side + "_bowl_avg"] = l1.bowl_avg;
                v[side + "_bat_wicket_rate"] = l1.bat_wicket_rate;
                v[side + "_bowl_strike_rate"] = l1.bowl_strike_rate;
                v[side + "_bat_index"] = l1.bat_index;
                v[side + "_bowl_index"] = l1.bowl_index;
                v[side + "_net_run_rate"] = l2.net_run_rate;
                v[side + "_net_avg"] = l2.net_avg;
                v[side + "_net_wicket_rate"] = l2.net_wicket_rate;
                v[side + "_net_index"] = l2.net_index;
            };
            put_side("home", home_l1, home_l2);
            put_side("away", away_l1, away_l2);
            v["win_pct_diff"] = l3.win_pct_diff;
            v["net_run_rate_diff"] = l3.net_run_rate_diff;
            v["net_avg_diff"] = l3.net_avg_diff;
            v["net_wicket_rate_diff"] = l3.net_wicket_rate_diff;
            v["net_index_diff"] = l3.net_index_diff;

            std::vector<double> row;
            row.reserve(out.columns.size());
            for (const auto& c : out.columns) row.push_back(v.at(c));
            out.rows.push_back(std::move(row));
            out.match_ids.push_back(m.match_id);
            out.seasons.push_back(m.season);
            out.dates.push_back(m.date);
            out.labels.push_back(m.outcome == Outcome::home_win ? 1 : 0);
        }

        // Ingest the day's matches into the running state.
        for (std::size_t k = i; k < group_end; ++k) {
            const MatchRecord& m = corpus.matches()[inc[k]];
            GameTotals home_game, away_game;
            home_game.add_match(m, true);
            away_game.add_match(m, false);
            team_games[m.home_team].push_back(home_game);
            team_games[m.away_team].push_back(away_game);
            league_runs += m.home_runs + m.away_runs;
            league_balls += m.home_balls + m.away_balls;
            league_wkts += m.home_wickets + m.away_wickets;
            league_innings += 2;
        }
        i = group_end;
    }
    return out;
}

std::map<int, double> home_advantage_by_season(const Corpus& corpus) {
    std::map<int, std::pair<int, int>> counts;  // season -> (home wins, included)
    for (auto idx : corpus.included_indices()) {
        const MatchRecord& m = corpus.matches()[idx];
        auto& [wins, n] = counts[m.season];
        ++n;
        if (m.outcome == Outcome::home_win) ++wins;
    }
    std::map<int, double> out;
    for (const auto& [season, wn] : counts) {
        out[season] = static_cast<double>(wn.first) / static_cast<double>(wn.second);
    }
    return out;
}

}  // namespace cricpred
