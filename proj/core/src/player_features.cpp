#include "cricpred/player_features.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

namespace cricpred {

namespace {

double floor0(double d) { return d > 0 ? d : 1.0; }

struct BatAgg {
    long long runs = 0, balls = 0;
    int dismissals = 0, innings = 0;
};
struct BowlAgg {
    long long balls = 0, runs = 0;
    int wickets = 0;
};

using BatCareers = std::map<std::string, BatAgg>;
using BowlCareers = std::map<std::string, BowlAgg>;

void accumulate_match_into_careers(const Corpus& corpus, const MatchRecord& m,
                                   BatCareers& bat, BowlCareers& bowl) {
    for (auto idx : corpus.batting_of(m.match_id)) {
        const BattingLine& line = corpus.batting()[idx];
        BatAgg& agg = bat[line.player_id];
        agg.runs += line.runs;
        agg.balls += line.balls_faced;
        if (line.dismissed) ++agg.dismissals;
        ++agg.innings;
    }
    for (auto idx : corpus.bowling_of(m.match_id)) {
        const BowlingLine& line = corpus.bowling()[idx];
        BowlAgg& agg = bowl[line.player_id];
        agg.balls += line.balls_bowled;
        agg.runs += line.runs_conceded;
        agg.wickets += line.wickets;
    }
}

// Per-match bowling figures ranked best-first feed the slot table.
void accumulate_match_into_table(const Corpus& corpus, const MatchRecord& m,
                                 ImputationTable& table) {
    for (auto idx : corpus.batting_of(m.match_id)) {
        const BattingLine& line = corpus.batting()[idx];
        if (line.position < 1 || line.position > 11) continue;
        table.add_batting_innings(corpus.is_overseas(line.player_id), line.position, line.runs,
                                  line.dismissed, line.balls_faced);
    }

    struct Figures {
        std::string player_id;
        long long balls;
        double value[3];
    };
    auto side_observations = [&](const std::string& team) {
        std::vector<Figures> figs;
        for (auto idx : corpus.bowling_of(m.match_id)) {
            const BowlingLine& line = corpus.bowling()[idx];
            if (line.team != team) continue;
            Figures f;
            f.player_id = line.player_id;
            f.balls = line.balls_bowled;
            f.value[0] = static_cast<double>(line.runs_conceded) / floor0(line.wickets);
            f.value[1] = 6.0 * static_cast<double>(line.runs_conceded) / floor0(line.balls_bowled);
            f.value[2] = static_cast<double>(line.balls_bowled) / floor0(line.wickets);
            figs.push_back(std::move(f));
        }
        for (int s = 0; s < 3; ++s) {
            std::sort(figs.begin(), figs.end(), [&](const Figures& a, const Figures& b) {
                if (a.value[s] != b.value[s]) return a.value[s] < b.value[s];
                if (a.balls != b.balls) return a.balls > b.balls;
                return a.player_id < b.player_id;
            });
            int n = std::min<int>(6, static_cast<int>(figs.size()));
            for (int slot = 1; slot <= n; ++slot) {
                table.add_slot_observation(slot, static_cast<BowlStat>(s),
                                           figs[slot - 1].value[s]);
            }
        }
    };
    side_observations(m.home_team);
    side_observations(m.away_team);
}

// Resolved inputs for one side of one match: per-position pooled batting
// counts (career or imputed) and the three ranked slot-value vectors.
struct SideData {
    std::array<BattingCell, 11> pos_counts;
    std::array<std::array<double, 6>, 3> slot_values;
};

BattingCell cell_from_career(const BatAgg& agg) {
    return {static_cast<double>(agg.runs), static_cast<double>(agg.dismissals),
            static_cast<double>(agg.balls), agg.innings};
}

SideData resolve_side(const Corpus& corpus, const Lineup& lineup, const BatCareers& bat,
                      const BowlCareers& bowl, const ImputationTable& table,
                      const PlayerFeatureConfig& cfg) {
    SideData side;
    for (int pos = 1; pos <= 11; ++pos) {
        const auto& member = lineup.players[pos - 1];
        const BatAgg* agg = nullptr;
        if (member) {
            auto it = bat.find(*member);
            if (it != bat.end()) agg = &it->second;
        }
        if (agg && agg->innings >= cfg.min_matches) {
            side.pos_counts[pos - 1] = cell_from_career(*agg);
        } else if (member) {
            side.pos_counts[pos - 1] = table.batting_counts(corpus.is_overseas(*member), pos);
        } else {
            side.pos_counts[pos - 1] = table.batting_counts(std::nullopt, pos);
        }
    }

    struct Candidate {
        std::string player_id;
        long long balls;
        double value[3];
    };
    std::vector<Candidate> eligible;
    for (const auto& member : lineup.players) {
        if (!member) continue;
        auto it = bowl.find(*member);
        if (it == bowl.end() || it->second.balls < cfg.min_balls) continue;
        const BowlAgg& agg = it->second;
        Candidate c;
        c.player_id = *member;
        c.balls = agg.balls;
        c.value[0] = static_cast<double>(agg.runs) / floor0(agg.wickets);
        c.value[1] = 6.0 * static_cast<double>(agg.runs) / floor0(agg.balls);
        c.value[2] = static_cast<double>(agg.balls) / floor0(agg.wickets);
        eligible.push_back(std::move(c));
    }
    for (int s = 0; s < 3; ++s) {
        std::sort(eligible.begin(), eligible.end(), [&](const Candidate& a, const Candidate& b) {
            if (a.value[s] != b.value[s]) return a.value[s] < b.value[s];
            if (a.balls != b.balls) return a.balls > b.balls;
            return a.player_id < b.player_id;
        });
        for (int slot = 1; slot <= 6; ++slot) {
            if (slot <= static_cast<int>(eligible.size())) {
                side.slot_values[s][slot - 1] = eligible[slot - 1].value[s];
            } else {
                side.slot_values[s][slot - 1] = table.bowling_slot(slot, static_cast<BowlStat>(s));
            }
        }
    }
    return side;
}

BattingStats group_from_positions(const std::array<BattingCell, 11>& pos_counts,
                                  const PositionRange& group) {
    double runs = 0, dis = 0, balls = 0;
    for (int pos = group.lo; pos <= group.hi; ++pos) {
        const BattingCell& c = pos_counts[pos - 1];
        runs += c.runs;
        dis += c.dismissals;
        balls += c.balls;
    }
    BattingStats s;
    s.average = runs / floor0(dis);
    s.strike_rate = 100.0 * runs / floor0(balls);
    return s;
}

double slot_group_mean(const std::array<double, 6>& values, const PositionRange& group) {
    double sum = 0;
    for (int slot = group.lo; slot <= group.hi; ++slot) sum += values[slot - 1];
    return sum / static_cast<double>(group.hi - group.lo + 1);
}

TeamPlayerLevel1 level1_from_side(const SideData& side) {
    TeamPlayerLevel1 l1;
    l1.batting.reserve(batting_groups().size());
    for (const auto& g : batting_groups()) {
        l1.batting.push_back(group_from_positions(side.pos_counts, g));
    }
    l1.bowling.reserve(bowling_groups().size());
    for (const auto& g : bowling_groups()) {
        BowlingStats s;
        s.average = slot_group_mean(side.slot_values[0], g);
        s.economy = slot_group_mean(side.slot_values[1], g);
        s.strike_rate = slot_group_mean(side.slot_values[2], g);
        l1.bowling.push_back(s);
    }
    return l1;
}

// Careers as of a date, scanning included matches chronologically.
void careers_before(const Corpus& corpus, const Date& as_of, BatCareers& bat, BowlCareers& bowl) {
    for (auto idx : corpus.included_indices()) {
        const MatchRecord& m = corpus.matches()[idx];
        if (m.date >= as_of) break;
        accumulate_match_into_careers(corpus, m, bat, bowl);
    }
}

std::vector<std::string> level1_side_names(const std::string& side) {
    std::vector<std::string> names;
    for (const auto& g : batting_groups()) {
        names.push_back(side + "_bat_" + g.name + "_avg");
        names.push_back(side + "_bat_" + g.name + "_sr");
    }
    for (const auto& g : bowling_groups()) {
        names.push_back(side + "_bowl_" + g.name + "_avg");
        names.push_back(side + "_bowl_" + g.name + "_econ");
        names.push_back(side + "_bowl_" + g.name + "_sr");
    }
    return names;
}

std::vector<double> level1_side_values(const TeamPlayerLevel1& l1) {
    std::vector<double> v;
    for (const auto& s : l1.batting) {
        v.push_back(s.average);
        v.push_back(s.strike_rate);
    }
    for (const auto& s : l1.bowling) {
        v.push_back(s.average);
        v.push_back(s.economy);
        v.push_back(s.strike_rate);
    }
    return v;
}

}  // namespace

const std::vector<PositionRange>& batting_groups() {
    static const std::vector<PositionRange> groups = [] {
        std::vector<PositionRange> g;
        for (int i = 1; i <= 11; ++i) g.push_back({"p" + std::to_string(i), i, i});
        for (int k = 2; k <= 10; ++k) g.push_back({"top" + std::to_string(k), 1, k});
        g.push_back({"all11", 1, 11});
        g.push_back({"r5_8", 5, 8});
        g.push_back({"r4_6", 4, 6});
        g.push_back({"r7_9", 7, 9});
        g.push_back({"r3_4", 3, 4});
        g.push_back({"r5_6", 5, 6});
        g.push_back({"r7_8", 7, 8});
        g.push_back({"r9_10", 9, 10});
        return g;
    }();
    return groups;
}

const std::vector<PositionRange>& bowling_groups() {
    static const std::vector<PositionRange> groups = [] {
        std::vector<PositionRange> g;
        for (int i = 1; i <= 6; ++i) g.push_back({"s" + std::to_string(i), i, i});
        for (int k = 2; k <= 5; ++k) g.push_back({"top" + std::to_string(k), 1, k});
        g.push_back({"all6", 1, 6});
        return g;
    }();
    return groups;
}

BattingCell ImputationTable::batting_counts(bool overseas, int position) const {
    return batting_counts(std::optional<bool>(overseas), position);
}

BattingCell ImputationTable::batting_counts(std::optional<bool> overseas, int position) const {
    auto cell_means = [](const RawCell& raw) {
        double n = static_cast<double>(raw.innings);
        return BattingCell{static_cast<double>(raw.runs) / n,
                           static_cast<double>(raw.dismissals) / n,
                           static_cast<double>(raw.balls) / n, raw.innings};
    };
    if (overseas) {
        const RawCell& raw = by_class_pos_[*overseas ? 1 : 0][position - 1];
        if (raw.innings > 0) return cell_means(raw);
    }
    const RawCell& raw = by_pos_[position - 1];
    if (raw.innings > 0) return cell_means(raw);
    return BattingCell{config.fallback_bat_avg, 1.0,
                       100.0 * config.fallback_bat_avg / config.fallback_bat_sr, 0};
}

BattingStats ImputationTable::batting(bool overseas, int position) const {
    BattingCell c = batting_counts(std::optional<bool>(overseas), position);
    BattingStats s;
    s.average = c.runs / floor0(c.dismissals);
    s.strike_rate = 100.0 * c.runs / floor0(c.balls);
    return s;
}

double ImputationTable::bowling_slot(int slot, BowlStat stat) const {
    const SlotCell& c = slots_[slot - 1][static_cast<int>(stat)];
    if (c.n > 0) return c.sum / static_cast<double>(c.n);
    switch (stat) {
        case BowlStat::average: return config.fallback_bowl_avg;
        case BowlStat::economy: return config.fallback_bowl_econ;
        case BowlStat::strike_rate: return config.fallback_bowl_sr;
    }
    return 0;
}

void ImputationTable::add_batting_innings(bool overseas, int position, int runs, bool dismissed,
                                          int balls) {
    auto bump = [&](RawCell& c) {
        c.runs += runs;
        if (dismissed) ++c.dismissals;
        c.balls += balls;
        ++c.innings;
    };
    bump(by_class_pos_[overseas ? 1 : 0][position - 1]);
    bump(by_pos_[position - 1]);
}

void ImputationTable::add_slot_observation(int slot, BowlStat stat, double value) {
    SlotCell& c = slots_[slot - 1][static_cast<int>(stat)];
    c.sum += value;
    ++c.n;
}

ImputationTable build_imputation_table(const Corpus& corpus, int up_to_year,
                                       const PlayerFeatureConfig& config) {
    ImputationTable table;
    table.up_to_year = up_to_year;
    table.config = config;
    for (auto idx : corpus.included_indices()) {
        const MatchRecord& m = corpus.matches()[idx];
        if (m.season >= up_to_year) continue;
        accumulate_match_into_table(corpus, m, table);
    }
    return table;
}

std::optional<Lineup> derive_lineup(const Corpus& corpus, const MatchRecord& match,
                                    const std::string& team) {
    Lineup lineup;
    lineup.team = team;
    bool any = false;
    for (auto idx : corpus.batting_of(match.match_id)) {
        const BattingLine& line = corpus.batting()[idx];
        if (line.team != team) continue;
        if (line.position < 1 || line.position > 11) continue;
        auto& slot = lineup.players[line.position - 1];
        if (!slot) {
            slot = line.player_id;
            any = true;
        }
    }
    if (!any) return std::nullopt;
    return lineup;
}

BattingStats batting_group_stats(const Corpus& corpus, const Lineup& lineup,
                                 const PositionRange& group, const Date& as_of,
                                 const ImputationTable& imputation,
                                 const PlayerFeatureConfig& config) {
    BatCareers bat;
    BowlCareers bowl;
    careers_before(corpus, as_of, bat, bowl);
    SideData side = resolve_side(corpus, lineup, bat, bowl, imputation, config);
    return group_from_positions(side.pos_counts, group);
}

std::array<double, 6> bowling_slot_stats(const Corpus& corpus, const Lineup& lineup,
                                         const Date& as_of, BowlStat stat,
                                         const ImputationTable& imputation,
                                         const PlayerFeatureConfig& config) {
    BatCareers bat;
    BowlCareers bowl;
    careers_before(corpus, as_of, bat, bowl);
    SideData side = resolve_side(corpus, lineup, bat, bowl, imputation, config);
    return side.slot_values[static_cast<int>(stat)];
}

TeamPlayerLevel1 team_player_level1(const Corpus& corpus, const Lineup& lineup,
                                    const Date& as_of, const ImputationTable& imputation,
                                    const PlayerFeatureConfig& config) {
    BatCareers bat;
    BowlCareers bowl;
    careers_before(corpus, as_of, bat, bowl);
    SideData side = resolve_side(corpus, lineup, bat, bowl, imputation, config);
    return level1_from_side(side);
}

std::vector<std::pair<std::string, double>> combination_metrics(const TeamPlayerLevel1& l1) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(100);
    const auto& bg = batting_groups();
    for (std::size_t i = 0; i < bg.size(); ++i) {
        const BattingStats& s = l1.batting[i];
        out.emplace_back("bat_" + bg[i].name + "_sky", s.average + s.strike_rate);
        out.emplace_back("bat_" + bg[i].name + "_prod", s.average * s.strike_rate);
    }
    const auto& wg = bowling_groups();
    for (std::size_t i = 0; i < wg.size(); ++i) {
        const BowlingStats& s = l1.bowling[i];
        out.emplace_back("bowl_" + wg[i].name + "_sky", s.average + s.economy + s.strike_rate);
        out.emplace_back("bowl_" + wg[i].name + "_prod3", s.average * s.economy * s.strike_rate);
        out.emplace_back("bowl_" + wg[i].name + "_sum2", s.average + s.economy);
        out.emplace_back("bowl_" + wg[i].name + "_prod2", s.average * s.economy);
    }
    return out;
}

std::vector<std::pair<std::string, double>> player_level2_features(
    const TeamPlayerLevel1& home, const TeamPlayerLevel1& away,
    const PlayerFeatureConfig& config) {
    std::vector<std::pair<std::string, double>> out;
    const auto& bg = batting_groups();
    if (!config.wide_diffs) {
        for (std::size_t i = 0; i < bg.size(); ++i) {
            out.emplace_back("bat_" + bg[i].name + "_avg_diff",
                             home.batting[i].average - away.batting[i].average);
        }
    } else {
        const auto& wg = bowling_groups();
        for (std::size_t i = 0; i < bg.size(); ++i) {
            out.emplace_back("bat_" + bg[i].name + "_avg_diff",
                             home.batting[i].average - away.batting[i].average);
            out.emplace_back("bat_" + bg[i].name + "_sr_diff",
                             home.batting[i].strike_rate - away.batting[i].strike_rate);
        }
        for (std::size_t i = 0; i < wg.size(); ++i) {
            out.emplace_back("bowl_" + wg[i].name + "_avg_diff",
                             home.bowling[i].average - away.bowling[i].average);
            out.emplace_back("bowl_" + wg[i].name + "_econ_diff",
                             home.bowling[i].economy - away.bowling[i].economy);
            out.emplace_back("bowl_" + wg[i].name + "_sr_diff",
                             home.bowling[i].strike_rate - away.bowling[i].strike_rate);
        }
    }
    for (const auto& [name, value] : combination_metrics(home)) {
        out.emplace_back("home_" + name, value);
    }
    for (const auto& [name, value] : combination_metrics(away)) {
        out.emplace_back("away_" + name, value);
    }
    return out;
}

std::vector<std::pair<std::string, double>> player_level3_features(
    const std::vector<std::pair<std::string, double>>& home_combos,
    const std::vector<std::pair<std::string, double>>& away_combos) {
    if (home_combos.size() != away_combos.size()) {
        throw ConfigError("combination metric lists differ in size");
    }
    std::vector<std::pair<std::string, double>> out;
    out.reserve(home_combos.size());
    for (std::size_t i = 0; i < home_combos.size(); ++i) {
        if (home_combos[i].first != away_combos[i].first) {
            throw ConfigError("combination metric lists are not aligned");
        }
        out.emplace_back(home_combos[i].first + "_diff",
                         home_combos[i].second - away_combos[i].second);
    }
    return out;
}

const std::vector<std::pair<std::string, PlayerFeatureInfo>>& player_feature_registry() {
    static const std::vector<std::pair<std::string, PlayerFeatureInfo>> reg = [] {
        std::vector<std::pair<std::string, PlayerFeatureInfo>> r;
        const auto& bg = batting_groups();
        const auto& wg = bowling_groups();
        for (const char* side : {"home", "away"}) {
            for (const auto& g : bg) {
                r.push_back({std::string(side) + "_bat_" + g.name + "_avg",
                             {1, side, "batting", g.name, "average"}});
                r.push_back({std::string(side) + "_bat_" + g.name + "_sr",
                             {1, side, "batting", g.name, "strike_rate"}});
            }
            for (const auto& g : wg) {
                r.push_back({std::string(side) + "_bowl_" + g.name + "_avg",
                             {1, side, "bowling", g.name, "average"}});
                r.push_back({std::string(side) + "_bowl_" + g.name + "_econ",
                             {1, side, "bowling", g.name, "economy"}});
                r.push_back({std::string(side) + "_bowl_" + g.name + "_sr",
                             {1, side, "bowling", g.name, "strike_rate"}});
            }
        }
        for (const auto& g : bg) {
            r.push_back({"bat_" + g.name + "_avg_diff",
                         {2, "diff", "batting", g.name, "average"}});
        }
        auto combo_entries = [&](const char* side) {
            for (const auto& g : bg) {
                r.push_back({std::string(side) + "_bat_" + g.name + "_sky",
                             {2, side, "batting", g.name, "sky_index"}});
                r.push_back({std::string(side) + "_bat_" + g.name + "_prod",
                             {2, side, "batting", g.name, "product_index"}});
            }
            for (const auto& g : wg) {
                r.push_back({std::string(side) + "_bowl_" + g.name + "_sky",
                             {2, side, "bowling", g.name, "sky_index"}});
                r.push_back({std::string(side) + "_bowl_" + g.name + "_prod3",
                             {2, side, "bowling", g.name, "product_index"}});
                r.push_back({std::string(side) + "_bowl_" + g.name + "_sum2",
                             {2, side, "bowling", g.name, "avg_plus_econ"}});
                r.push_back({std::string(side) + "_bowl_" + g.name + "_prod2",
                             {2, side, "bowling", g.name, "avg_times_econ"}});
            }
        };
        combo_entries("home");
        combo_entries("away");
        for (const auto& g : bg) {
            r.push_back({"bat_" + g.name + "_sky_diff", {3, "diff", "batting", g.name, "sky_index"}});
            r.push_back({"bat_" + g.name + "_prod_diff",
                         {3, "diff", "batting", g.name, "product_index"}});
        }
        for (const auto& g : wg) {
            r.push_back({"bowl_" + g.name + "_sky_diff", {3, "diff", "bowling", g.name, "sky_index"}});
            r.push_back({"bowl_" + g.name + "_prod3_diff",
                         {3, "diff", "bowling", g.name, "product_index"}});
            r.push_back({"bowl_" + g.name + "_sum2_diff",
                         {3, "diff", "bowling", g.name, "avg_plus_econ"}});
            r.push_back({"bowl_" + g.name + "_prod2_diff",
                         {3, "diff", "bowling", g.name, "avg_times_econ"}});
        }
        return r;
    }();
    return reg;
}

void write_player_feature_registry(const std::string& path) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& [name, info] : player_feature_registry()) {
        nlohmann::ordered_json e;
        e["name"] = name;
        e["level"] = info.level;
        e["side"] = info.side;
        e["discipline"] = info.discipline;
        e["group"] = info.group;
        e["statistic"] = info.statistic;
        doc.push_back(std::move(e));
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

FeatureMatrix build_player_matrix(const Corpus& corpus, const PlayerFeatureConfig& config,
                                  PlayerBuildInfo* info) {
    FeatureMatrix out;
    if (!config.wide_diffs) {
        for (const auto& [name, _] : player_feature_registry()) out.columns.push_back(name);
    }

    BatCareers bat;
    BowlCareers bowl;
    ImputationTable running;
    running.config = config;
    std::map<int, ImputationTable> frozen;

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
            auto frozen_it = frozen.find(m.season);
            if (frozen_it == frozen.end()) {
                ImputationTable snapshot = running;
                snapshot.up_to_year = m.season;
                frozen_it = frozen.emplace(m.season, std::move(snapshot)).first;
            }
            const ImputationTable& table = frozen_it->second;

            auto home_lineup = derive_lineup(corpus, m, m.home_team);
            auto away_lineup = derive_lineup(corpus, m, m.away_team);
            if (!home_lineup || !away_lineup) {
                if (info) {
                    ++info->excluded_rows;
                    info->exclusion_reasons.push_back(
                        "match " + m.match_id + ": no batting lines for " +
                        (!home_lineup ? m.home_team : m.away_team));
                }
                continue;
            }

            SideData home_side = resolve_side(corpus, *home_lineup, bat, bowl, table, config);
            SideData away_side = resolve_side(corpus, *away_lineup, bat, bowl, table, config);
            TeamPlayerLevel1 home_l1 = level1_from_side(home_side);
            TeamPlayerLevel1 away_l1 = level1_from_side(away_side);

            std::vector<double> row;
            row.reserve(out.columns.empty() ? 506 : out.columns.size());
            auto hv = level1_side_values(home_l1);
            auto av = level1_side_values(away_l1);
            row.insert(row.end(), hv.begin(), hv.end());
            row.insert(row.end(), av.begin(), av.end());

            auto l2 = player_level2_features(home_l1, away_l1, config);
            for (const auto& [_, value] : l2) row.push_back(value);
            auto home_combos = combination_metrics(home_l1);
            auto away_combos = combination_metrics(away_l1);
            auto l3 = player_level3_features(home_combos, away_combos);
            for (const auto& [_, value] : l3) row.push_back(value);

            if (out.columns.empty()) {
                auto names = level1_side_names("home");
                auto anames = level1_side_names("away");
                names.insert(names.end(), anames.begin(), anames.end());
                for (const auto& [name, _] : l2) names.push_back(name);
                for (const auto& [name, _] : l3) names.push_back(name);
                out.columns = std::move(names);
            }

            out.rows.push_back(std::move(row));
            out.match_ids.push_back(m.match_id);
            out.seasons.push_back(m.season);
            out.dates.push_back(m.date);
            out.labels.push_back(m.outcome == Outcome::home_win ? 1 : 0);
        }

        for (std::size_t k = i; k < group_end; ++k) {
            const MatchRecord& m = corpus.matches()[inc[k]];
            accumulate_match_into_careers(corpus, m, bat, bowl);
            accumulate_match_into_table(corpus, m, running);
        }
        i = group_end;
    }
    return out;
}

}  // namespace cricpred
