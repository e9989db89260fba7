#include "cricpred/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "cricpred/rng.hpp"

namespace cricpred {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::string zero_pad2(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

std::string team_name(int i) { return "T" + zero_pad2(i + 1); }

std::string player_name(int team, int slot) {
    return team_name(team) + "_P" + zero_pad2(slot + 1);
}

// Integer apportionment: floor the targets, then hand out the remainder
// by largest fractional part (index order on ties). Sums exactly to total.
std::vector<int> apportion(int total, const std::vector<double>& weights) {
    std::size_t n = weights.size();
    double wsum = 0;
    for (double w : weights) wsum += w;
    std::vector<int> out(n, 0);
    if (total <= 0 || wsum <= 0) return out;
    std::vector<std::pair<double, std::size_t>> frac(n);
    int given = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double target = total * weights[j] / wsum;
        out[j] = static_cast<int>(target);
        given += out[j];
        frac[j] = {target - out[j], j};
    }
    std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int r = 0; r < total - given; ++r) out[frac[static_cast<std::size_t>(r)].second] += 1;
    return out;
}

}  // namespace

SyntheticCorpus generate_corpus(const GeneratorConfig& config) {
    if (config.n_teams < 2) throw ConfigError("generate_corpus: n_teams must be >= 2");
    if (config.seasons.empty()) throw ConfigError("generate_corpus: no seasons configured");
    if (config.team_skill_spread < 0 || config.player_skill_spread < 0) {
        throw ConfigError("generate_corpus: skill spreads must be >= 0");
    }

    std::mt19937_64 rng = seeded_engine(config.seed, 0);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SyntheticCorpus out;
    GroundTruth& truth = out.truth;

    int n = config.n_teams;
    std::vector<double> team_skill(n);
    for (int t = 0; t < n; ++t) {
        team_skill[t] = config.team_skill_spread * unit_normal(rng);
        truth.team_skill[team_name(t)] = team_skill[t];
    }

    std::vector<PlayerProfile> players;
    std::vector<std::vector<double>> bat_skill(n), bowl_skill(n);
    for (int t = 0; t < n; ++t) {
        bat_skill[t].resize(config.squad_size);
        bowl_skill[t].resize(config.squad_size);
        for (int s = 0; s < config.squad_size; ++s) {
            bool overseas = s >= config.squad_size - config.overseas_per_squad;
            double boost = overseas ? config.overseas_boost : 0.0;
            bat_skill[t][s] =
                0.5 * team_skill[t] + config.player_skill_spread * unit_normal(rng) + boost;
            bowl_skill[t][s] =
                0.5 * team_skill[t] + config.player_skill_spread * unit_normal(rng) + boost;
            std::string id = player_name(t, s);
            players.push_back({id, overseas});
            truth.player_batting_skill[id] = bat_skill[t][s];
            truth.player_bowling_skill[id] = bowl_skill[t][s];
        }
    }

    std::vector<MatchRecord> matches;
    std::vector<BattingLine> batting;
    std::vector<BowlingLine> bowling;
    std::vector<OddsRecord> odds;

    // Batting-order weights: the top order faces more of the innings.
    const std::vector<double> position_weight = {1.30, 1.25, 1.20, 1.15, 1.05, 0.95,
                                                 0.80, 0.60, 0.40, 0.25, 0.15};

    for (int season : config.seasons) {
        bool anomaly = config.anomaly_seasons.count(season) > 0;
        bool skill_flip = config.skill_flip_seasons.count(season) > 0;
        int match_counter = 0;

        // Circle-method rounds: everyone plays once per round.
        int rounds = config.matches_per_team;
        for (int round = 0; round < rounds; ++round) {
            std::vector<int> order(static_cast<std::size_t>(n));
            order[0] = 0;
            for (int i = 1; i < n; ++i) {
                order[static_cast<std::size_t>(i)] = (i - 1 + round) % (n - 1) + 1;
            }
            Date day{season, 5, 1};
            int day_offset = round * 3;
            day.month = 5 + (day_offset + 1) / 30;
            day.day = (day_offset + 1) % 30 + 1;

            for (int i = 0; i < n / 2; ++i) {
                int a = order[static_cast<std::size_t>(i)];
                int b = order[static_cast<std::size_t>(n - 1 - i)];
                bool a_home = unit(rng) < 0.5;
                int home = a_home ? a : b;
                int away = a_home ? b : a;
                ++match_counter;

                MatchRecord m;
                std::string counter = std::to_string(match_counter);
                m.match_id = "m" + std::to_string(season) + "_" +
                             std::string(counter.size() < 3 ? 3 - counter.size() : 0, '0') +
                             counter;
                m.season = season;
                m.date = day;
                m.stage = Stage::group;
                m.home_team = team_name(home);
                m.away_team = team_name(away);

                double h = config.home_advantage * (anomaly ? -1.0 : 1.0);
                double s = team_skill[home] - team_skill[away];
                if (skill_flip) s = -s;
                double p = sigmoid(s + h);

                double category = unit(rng);
                if (category < config.no_result_fraction) {
                    m.outcome = Outcome::no_result;
                    m.home_runs = 40 + static_cast<int>(unit(rng) * 30);
                    m.home_balls = 30 + static_cast<int>(unit(rng) * 24);
                    m.home_wickets = static_cast<int>(unit(rng) * 4);
                    m.away_runs = m.away_balls = m.away_wickets = 0;
                    matches.push_back(std::move(m));
                    continue;  // abandoned: no scorecards
                }
                bool tie = category < config.no_result_fraction + config.tie_fraction;

                bool home_won = unit(rng) < p;
                truth.p_home[m.match_id] = p;

                int win_total = 140 + static_cast<int>(std::lround(
                                          std::clamp(unit_normal(rng) * 15.0 + 25.0, -50.0, 90.0)));
                int margin = 1 + static_cast<int>(unit(rng) * 40);
                int lose_total = std::max(60, win_total - margin);
                int home_total = home_won ? win_total : lose_total;
                int away_total = home_won ? lose_total : win_total;
                if (tie) {
                    m.outcome = Outcome::tie;
                    away_total = home_total;
                } else {
                    m.outcome = home_won ? Outcome::home_win : Outcome::away_win;
                }
                int home_wkts = (home_won && !tie) ? 3 + static_cast<int>(unit(rng) * 4)
                                                   : 5 + static_cast<int>(unit(rng) * 4);
                int away_wkts = (home_won || tie) ? 5 + static_cast<int>(unit(rng) * 4)
                                                  : 3 + static_cast<int>(unit(rng) * 4);
                m.home_runs = home_total;
                m.away_runs = away_total;
                m.home_balls = m.away_balls = 120;
                m.home_wickets = home_wkts;
                m.away_wickets = away_wkts;

                // Scorecards for both innings: the XI rotates through the
                // squad, runs go preferentially to skilled top-order bats,
                // and wickets/concessions track bowling skill.
                auto make_innings = [&](int bat_team, int bowl_team, int total, int wkts) {
                    int squad = config.squad_size;
                    std::vector<int> xi(11);
                    int start = (round + bat_team) % squad;
                    for (int j = 0; j < 11; ++j) xi[j] = (start + j) % squad;
                    std::sort(xi.begin(), xi.end());

                    int extras = 3 + static_cast<int>(unit(rng) * 17);
                    int player_runs = std::max(0, total - extras);
                    std::vector<double> w(11);
                    for (int j = 0; j < 11; ++j) {
                        w[j] = std::exp(bat_skill[bat_team][xi[j]]) * position_weight[j];
                    }
                    std::vector<int> runs = apportion(player_runs, w);
                    std::vector<double> bw(11);
                    for (int j = 0; j < 11; ++j) bw[j] = runs[j] + 2.0;
                    std::vector<int> balls = apportion(114, bw);

                    for (int j = 0; j < 11; ++j) {
                        BattingLine line;
                        line.match_id = m.match_id;
                        line.team = team_name(bat_team);
                        line.player_id = player_name(bat_team, xi[j]);
                        line.position = j + 1;
                        line.runs = runs[j];
                        line.balls_faced = balls[j];
                        line.dismissed = j < wkts;
                        batting.push_back(std::move(line));
                    }

                    // Six bowlers from the fielding XI's lower order.
                    std::vector<int> fielding_xi(11);
                    int fstart = (round + bowl_team) % squad;
                    for (int j = 0; j < 11; ++j) fielding_xi[j] = (fstart + j) % squad;
                    std::sort(fielding_xi.begin(), fielding_xi.end());
                    std::vector<int> bowlers(fielding_xi.begin() + 5, fielding_xi.end());

                    std::vector<double> concede_w(6), wicket_w(6);
                    for (int j = 0; j < 6; ++j) {
                        concede_w[j] = std::exp(-bowl_skill[bowl_team][bowlers[j]]);
                        wicket_w[j] = std::exp(bowl_skill[bowl_team][bowlers[j]]);
                    }
                    std::vector<int> conceded = apportion(total, concede_w);
                    std::vector<int> bowler_wkts = apportion(wkts, wicket_w);
                    for (int j = 0; j < 6; ++j) {
                        BowlingLine line;
                        line.match_id = m.match_id;
                        line.team = team_name(bowl_team);
                        line.player_id = player_name(bowl_team, bowlers[j]);
                        line.balls_bowled = 20;
                        line.runs_conceded = conceded[j];
                        line.wickets = bowler_wkts[j];
                        bowling.push_back(std::move(line));
                    }
                };
                make_innings(home, away, home_total, home_wkts);
                make_innings(away, home, away_total, away_wkts);

                if (config.with_odds && !tie) {
                    double qh = p * std::exp(config.odds_noise * unit_normal(rng));
                    double qa = (1.0 - p) * std::exp(config.odds_noise * unit_normal(rng));
                    double scale = (1.0 + config.overround) / (qh + qa);
                    qh = std::clamp(qh * scale, 0.01, 0.99);
                    qa = std::clamp(qa * scale, 0.01, 0.99);
                    odds.push_back({m.match_id, 1.0 / qh, 1.0 / qa});
                }
                if (tie) truth.p_home.erase(m.match_id);

                matches.push_back(std::move(m));
            }
        }

        if (config.finals_day) {
            // Two semi-finals and a final, all on one late-season day.
            Date day{season, 8, 25};
            int finalists[4] = {0, 1, 2, 3};
            for (int g = 0; g < 3; ++g) {
                ++match_counter;
                MatchRecord m;
                std::string counter = std::to_string(match_counter);
                m.match_id = "m" + std::to_string(season) + "_" +
                             std::string(counter.size() < 3 ? 3 - counter.size() : 0, '0') +
                             counter;
                m.season = season;
                m.date = day;
                m.stage = Stage::finals_day;
                int a = finalists[g == 2 ? 0 : 2 * g];
                int b = finalists[g == 2 ? 1 : 2 * g + 1];
                m.home_team = team_name(a);
                m.away_team = team_name(b);
                bool home_won = unit(rng) < 0.5;
                m.outcome = home_won ? Outcome::home_win : Outcome::away_win;
                m.home_runs = home_won ? 160 : 145;
                m.away_runs = home_won ? 145 : 160;
                m.home_balls = m.away_balls = 120;
                m.home_wickets = 5;
                m.away_wickets = 7;
                matches.push_back(std::move(m));
            }
        }
    }

    out.corpus = Corpus::from_records(std::move(matches), std::move(batting), std::move(bowling),
                                      std::move(players), std::move(odds));
    return out;
}

double bayes_ceiling(const GroundTruth& truth) {
    if (truth.p_home.empty()) return 0.0;
    double sum = 0;
    for (const auto& [id, p] : truth.p_home) sum += std::max(p, 1.0 - p);
    return sum / static_cast<double>(truth.p_home.size());
}

void write_ground_truth(const std::string& path, const GroundTruth& truth) {
    nlohmann::ordered_json doc;
    doc["team_skill"] = truth.team_skill;
    doc["player_batting_skill"] = truth.player_batting_skill;
    doc["player_bowling_skill"] = truth.player_bowling_skill;
    doc["p_home"] = truth.p_home;
    doc["bayes_ceiling"] = bayes_ceiling(truth);
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

GroundTruth read_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(in);
    GroundTruth truth;
    truth.team_skill = doc.at("team_skill").get<std::map<std::string, double>>();
    truth.player_batting_skill =
        doc.at("player_batting_skill").get<std::map<std::string, double>>();
    truth.player_bowling_skill =
        doc.at("player_bowling_skill").get<std::map<std::string, double>>();
    truth.p_home = doc.at("p_home").get<std::map<std::string, double>>();
    return truth;
}

}  // namespace cricpred
