#include "cricpred/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cricpred/csv.hpp"

namespace cricpred {

namespace fs = std::filesystem;

std::string to_string(Stage s) {
    switch (s) {
        case Stage::group: return "group";
        case Stage::quarter_final: return "quarter_final";
        case Stage::semi_final: return "semi_final";
        case Stage::finals_day: return "finals_day";
    }
    return "?";
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::home_win: return "home_win";
        case Outcome::away_win: return "away_win";
        case Outcome::tie: return "tie";
        case Outcome::no_result: return "no_result";
    }
    return "?";
}

std::optional<Stage> parse_stage(const std::string& s) {
    if (s == "group") return Stage::group;
    if (s == "quarter_final") return Stage::quarter_final;
    if (s == "semi_final") return Stage::semi_final;
    if (s == "finals_day") return Stage::finals_day;
    return std::nullopt;
}

std::optional<Outcome> parse_outcome(const std::string& s) {
    if (s == "home_win") return Outcome::home_win;
    if (s == "away_win") return Outcome::away_win;
    if (s == "tie") return Outcome::tie;
    if (s == "no_result") return Outcome::no_result;
    return std::nullopt;
}

CorpusPaths CorpusPaths::in_dir(const std::string& dir) {
    CorpusPaths p;
    p.matches = dir + "/matches.csv";
    p.batting = dir + "/batting.csv";
    p.bowling = dir + "/bowling.csv";
    p.players = dir + "/players.csv";
    std::string odds = dir + "/odds.csv";
    if (fs::exists(odds)) p.odds = odds;
    return p;
}

namespace {

const std::vector<std::string> kMatchHeader = {
    "match_id", "season", "date", "stage", "home_team", "away_team", "outcome",
    "home_runs", "home_balls", "home_wickets", "away_runs", "away_balls", "away_wickets"};
const std::vector<std::string> kBattingHeader = {
    "match_id", "team", "player_id", "position", "runs", "balls_faced", "dismissed"};
const std::vector<std::string> kBowlingHeader = {
    "match_id", "team", "player_id", "balls_bowled", "runs_conceded", "wickets"};
const std::vector<std::string> kPlayersHeader = {"player_id", "overseas"};
const std::vector<std::string> kOddsHeader = {"match_id", "home_odds", "away_odds"};

}  // namespace

Corpus Corpus::load(const CorpusPaths& paths) {
    Corpus c;

    {
        CsvFile f = read_csv(paths.matches);
        require_header(f, kMatchHeader);
        std::set<std::string> seen;
        for (std::size_t i = 0; i < f.rows.size(); ++i) {
            CsvRow row(f, i);
            MatchRecord m;
            m.match_id = row.raw(0);
            if (m.match_id.empty()) row.fail(0, "empty match_id");
            if (!seen.insert(m.match_id).second) row.fail(0, "duplicate match_id \"" + m.match_id + "\"");
            m.season = static_cast<int>(row.get_int(1));
            m.date = row.get_date(2);
            auto stage = parse_stage(row.raw(3));
            if (!stage) row.fail(3, "unknown stage \"" + row.raw(3) + "\"");
            m.stage = *stage;
            m.home_team = row.raw(4);
            m.away_team = row.raw(5);
            if (m.home_team.empty() || m.away_team.empty()) row.fail(4, "empty team id");
            if (m.home_team == m.away_team) row.fail(5, "home and away team identical");
            auto outcome = parse_outcome(row.raw(6));
            if (!outcome) row.fail(6, "unknown outcome \"" + row.raw(6) + "\"");
            m.outcome = *outcome;
            m.home_runs = static_cast<int>(row.get_int(7));
            m.home_balls = static_cast<int>(row.get_int(8));
            m.home_wickets = static_cast<int>(row.get_int(9));
            m.away_runs = static_cast<int>(row.get_int(10));
            m.away_balls = static_cast<int>(row.get_int(11));
            m.away_wickets = static_cast<int>(row.get_int(12));
            c.matches_.push_back(std::move(m));
        }
    }

    std::set<std::string> match_ids;
    for (const auto& m : c.matches_) match_ids.insert(m.match_id);

    {
        CsvFile f = read_csv(paths.batting);
        require_header(f, kBattingHeader);
        for (std::size_t i = 0; i < f.rows.size(); ++i) {
            CsvRow row(f, i);
            BattingLine b;
            b.match_id = row.raw(0);
            if (!match_ids.count(b.match_id)) {
                row.fail(0, "batting line references unknown match_id \"" + b.match_id + "\"");
            }
            b.team = row.raw(1);
            b.player_id = row.raw(2);
            b.position = static_cast<int>(row.get_int(3));
            b.runs = static_cast<int>(row.get_int(4));
            b.balls_faced = static_cast<int>(row.get_int(5));
            b.dismissed = row.get_bool01(6);
            c.batting_.push_back(std::move(b));
        }
    }

    {
        CsvFile f = read_csv(paths.bowling);
        require_header(f, kBowlingHeader);
        for (std::size_t i = 0; i < f.rows.size(); ++i) {
            CsvRow row(f, i);
            BowlingLine b;
            b.match_id = row.raw(0);
            if (!match_ids.count(b.match_id)) {
                row.fail(0, "bowling line references unknown match_id \"" + b.match_id + "\"");
            }
            b.team = row.raw(1);
            b.player_id = row.raw(2);
            b.balls_bowled = static_cast<int>(row.get_int(3));
            b.runs_conceded = static_cast<int>(row.get_int(4));
            b.wickets = static_cast<int>(row.get_int(5));
            c.bowling_.push_back(std::move(b));
        }
    }

    {
        CsvFile f = read_csv(paths.players);
        require_header(f, kPlayersHeader);
        for (std::size_t i = 0; i < f.rows.size(); ++i) {
            CsvRow row(f, i);
            PlayerProfile p;
            p.player_id = row.raw(0);
            if (p.player_id.empty()) row.fail(0, "empty player_id");
            p.overseas = row.get_bool01(1);
            if (c.players_.count(p.player_id)) row.fail(0, "duplicate player_id \"" + p.player_id + "\"");
            c.players_.emplace(p.player_id, p);
        }
    }

    if (!paths.odds.empty()) {
        if (!fs::exists(paths.odds)) throw DataError("cannot open file: " + paths.odds);
        CsvFile f = read_csv(paths.odds);
        require_header(f, kOddsHeader);
        for (std::size_t i = 0; i < f.rows.size(); ++i) {
            CsvRow row(f, i);
            OddsRecord o;
            o.match_id = row.raw(0);
            if (!match_ids.count(o.match_id)) {
                row.fail(0, "odds row references unknown match_id \"" + o.match_id + "\"");
            }
            o.home_odds = row.get_double(1);
            o.away_odds = row.get_double(2);
            if (o.home_odds <= 1.0) row.fail(1, "decimal odds must be > 1.0");
            if (o.away_odds <= 1.0) row.fail(2, "decimal odds must be > 1.0");
            if (c.odds_.count(o.match_id)) row.fail(0, "duplicate odds for match \"" + o.match_id + "\"");
            c.odds_.emplace(o.match_id, o);
        }
    }

    c.finalize();
    return c;
}

Corpus Corpus::from_records(std::vector<MatchRecord> matches, std::vector<BattingLine> batting,
                            std::vector<BowlingLine> bowling, std::vector<PlayerProfile> players,
                            std::vector<OddsRecord> odds) {
    Corpus c;
    c.matches_ = std::move(matches);
    c.batting_ = std::move(batting);
    c.bowling_ = std::move(bowling);
    std::set<std::string> ids;
    for (const auto& m : c.matches_) {
        if (!ids.insert(m.match_id).second) throw DataError("duplicate match_id: " + m.match_id);
    }
    for (const auto& b : c.batting_) {
        if (!ids.count(b.match_id)) throw DataError("batting line references unknown match_id: " + b.match_id);
    }
    for (const auto& b : c.bowling_) {
        if (!ids.count(b.match_id)) throw DataError("bowling line references unknown match_id: " + b.match_id);
    }
    for (auto& p : players) {
        if (c.players_.count(p.player_id)) throw DataError("duplicate player_id: " + p.player_id);
        c.players_.emplace(p.player_id, std::move(p));
    }
    for (auto& o : odds) {
        if (!ids.count(o.match_id)) throw DataError("odds row references unknown match_id: " + o.match_id);
        if (o.home_odds <= 1.0 || o.away_odds <= 1.0) throw DataError("decimal odds must be > 1.0: " + o.match_id);
        c.odds_.emplace(o.match_id, std::move(o));
    }
    c.finalize();
    return c;
}

void Corpus::finalize() {
    std::stable_sort(matches_.begin(), matches_.end(),
                     [](const MatchRecord& a, const MatchRecord& b) {
                         if (a.date != b.date) return a.date < b.date;
                         return a.match_id < b.match_id;
                     });
    match_index_.clear();
    for (std::size_t i = 0; i < matches_.size(); ++i) {
        match_index_[matches_[i].match_id] = i;
    }

    // Canonical line order: match chronology, then team, position / player.
    auto order_of = [this](const std::string& id) { return match_index_.at(id); };
    std::stable_sort(batting_.begin(), batting_.end(), [&](const BattingLine& a, const BattingLine& b) {
        auto oa = order_of(a.match_id), ob = order_of(b.match_id);
        if (oa != ob) return oa < ob;
        if (a.team != b.team) return a.team < b.team;
        if (a.position != b.position) return a.position < b.position;
        return a.player_id < b.player_id;
    });
    std::stable_sort(bowling_.begin(), bowling_.end(), [&](const BowlingLine& a, const BowlingLine& b) {
        auto oa = order_of(a.match_id), ob = order_of(b.match_id);
        if (oa != ob) return oa < ob;
        if (a.team != b.team) return a.team < b.team;
        return a.player_id < b.player_id;
    });

    batting_by_match_.clear();
    for (std::size_t i = 0; i < batting_.size(); ++i) {
        batting_by_match_[batting_[i].match_id].push_back(i);
    }
    bowling_by_match_.clear();
    for (std::size_t i = 0; i < bowling_.size(); ++i) {
        bowling_by_match_[bowling_[i].match_id].push_back(i);
    }

    included_.clear();
    team_included_.clear();
    for (std::size_t i = 0; i < matches_.size(); ++i) {
        if (!included(matches_[i])) continue;
        included_.push_back(i);
        team_included_[matches_[i].home_team].push_back(i);
        team_included_[matches_[i].away_team].push_back(i);
    }
}

const MatchRecord* Corpus::find_match(const std::string& match_id) const {
    auto it = match_index_.find(match_id);
    return it == match_index_.end() ? nullptr : &matches_[it->second];
}

const std::vector<std::size_t>& Corpus::batting_of(const std::string& match_id) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = batting_by_match_.find(match_id);
    return it == batting_by_match_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& Corpus::bowling_of(const std::string& match_id) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = bowling_by_match_.find(match_id);
    return it == bowling_by_match_.end() ? kEmpty : it->second;
}

bool Corpus::is_overseas(const std::string& player_id) const {
    auto it = players_.find(player_id);
    return it != players_.end() && it->second.overseas;
}

const std::vector<std::size_t>& Corpus::team_matches(const std::string& team) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = team_included_.find(team);
    return it == team_included_.end() ? kEmpty : it->second;
}

std::vector<int> Corpus::seasons() const {
    std::set<int> s;
    for (const auto& m : matches_) s.insert(m.season);
    return {s.begin(), s.end()};
}

bool Corpus::operator==(const Corpus& other) const {
    return matches_ == other.matches_ && batting_ == other.batting_ &&
           bowling_ == other.bowling_ && players_ == other.players_ && odds_ == other.odds_;
}

void Corpus::save(const std::string& dir) const {
    fs::create_directories(dir);
    {
        std::ofstream out(dir + "/matches.csv");
        out << "match_id,season,date,stage,home_team,away_team,outcome,"
               "home_runs,home_balls,home_wickets,away_runs,away_balls,away_wickets\n";
        for (const auto& m : matches_) {
            out << m.match_id << ',' << m.season << ',' << to_string(m.date) << ','
                << to_string(m.stage) << ',' << m.home_team << ',' << m.away_team << ','
                << to_string(m.outcome) << ',' << m.home_runs << ',' << m.home_balls << ','
                << m.home_wickets << ',' << m.away_runs << ',' << m.away_balls << ','
                << m.away_wickets << '\n';
        }
    }
    {
        std::ofstream out(dir + "/batting.csv");
        out << "match_id,team,player_id,position,runs,balls_faced,dismissed\n";
        for (const auto& b : batting_) {
            out << b.match_id << ',' << b.team << ',' << b.player_id << ',' << b.position << ','
                << b.runs << ',' << b.balls_faced << ',' << (b.dismissed ? 1 : 0) << '\n';
        }
    }
    {
        std::ofstream out(dir + "/bowling.csv");
        out << "match_id,team,player_id,balls_bowled,runs_conceded,wickets\n";
        for (const auto& b : bowling_) {
            out << b.match_id << ',' << b.team << ',' << b.player_id << ',' << b.balls_bowled
                << ',' << b.runs_conceded << ',' << b.wickets << '\n';
        }
    }
    {
        std::ofstream out(dir + "/players.csv");
        out << "player_id,overseas\n";
        for (const auto& [id, p] : players_) {
            out << id << ',' << (p.overseas ? 1 : 0) << '\n';
        }
    }
    if (!odds_.empty()) {
        std::ofstream out(dir + "/odds.csv");
        out << "match_id,home_odds,away_odds\n";
        for (const auto& [id, o] : odds_) {
            out << id << ',' << format_double(o.home_odds) << ',' << format_double(o.away_odds)
                << '\n';
        }
    }
}

FilterResult filter_matches(const Corpus& corpus) {
    FilterResult r;
    const auto& ms = corpus.matches();
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const MatchRecord& m = ms[i];
        auto& s = r.by_season[m.season];
        ++s.games;
        if (m.stage == Stage::finals_day) {
            ++s.finals_day;
        } else if (m.outcome == Outcome::tie) {
            ++s.tied;
        } else if (m.outcome == Outcome::no_result) {
            ++s.no_result;
        } else {
            ++s.included;
            r.included.push_back(i);
        }
    }
    return r;
}

std::vector<std::size_t> history_before(const Corpus& corpus, const std::string& team,
                                        const Date& as_of, int window) {
    const auto& all = corpus.team_matches(team);
    // Matches are chronological; find the first at or past as_of.
    auto end = std::lower_bound(all.begin(), all.end(), as_of,
                                [&](std::size_t idx, const Date& d) {
                                    return corpus.matches()[idx].date < d;
                                });
    auto begin = all.begin();
    if (window > 0 && end - begin > window) begin = end - window;
    return {begin, end};
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& f : findings) os << f.where << ": " << f.what << "\n";
    return os.str();
}

ValidationReport validate_corpus(const Corpus& corpus, const ValidationOptions& opts) {
    ValidationReport report;
    auto add = [&](std::string where, std::string what) {
        report.findings.push_back({std::move(where), std::move(what)});
    };

    for (const auto& m : corpus.matches()) {
        std::string where = "match " + m.match_id;
        if (m.home_wickets < 0 || m.home_wickets > 10)
            add(where, "home wickets_lost out of range 0..10: " + std::to_string(m.home_wickets));
        if (m.away_wickets < 0 || m.away_wickets > 10)
            add(where, "away wickets_lost out of range 0..10: " + std::to_string(m.away_wickets));
        if (m.home_runs < 0 || m.away_runs < 0) add(where, "negative runs");
        if (m.home_balls < 0 || m.away_balls < 0) add(where, "negative balls");
        if (m.outcome == Outcome::tie && m.home_runs != m.away_runs)
            add(where, "tie with unequal scores");
        if (m.date.year != m.season)
            add(where, "date " + to_string(m.date) + " outside season year " +
                           std::to_string(m.season));
    }

    // Per-innings batting checks: duplicate positions, position range,
    // innings totals vs. summed player runs within the extras slack.
    struct InningsAgg {
        std::map<int, int> position_count;
        int runs = 0;
        bool any = false;
    };
    std::map<std::pair<std::string, std::string>, InningsAgg> innings;
    for (const auto& b : corpus.batting()) {
        std::string where = "batting " + b.match_id + "/" + b.player_id;
        const MatchRecord* m = corpus.find_match(b.match_id);
        if (m && b.team != m->home_team && b.team != m->away_team)
            add(where, "team \"" + b.team + "\" is not playing in this match");
        if (b.position < 1 || b.position > 11)
            add(where, "position out of range 1..11: " + std::to_string(b.position));
        if (b.runs < 0) add(where, "negative runs");
        if (b.balls_faced < 0) add(where, "negative balls_faced");
        if (!corpus.players().count(b.player_id))
            add(where, "player has no profile in players.csv");
        auto& agg = innings[{b.match_id, b.team}];
        agg.position_count[b.position]++;
        agg.runs += b.runs;
        agg.any = true;
    }
    for (const auto& [key, agg] : innings) {
        const auto& [match_id, team] = key;
        for (const auto& [pos, count] : agg.position_count) {
            if (count > 1)
                add("batting " + match_id + "/" + team,
                    "duplicate batting position " + std::to_string(pos));
        }
        const MatchRecord* m = corpus.find_match(match_id);
        if (!m) continue;
        bool is_home = team == m->home_team;
        if (!is_home && team != m->away_team) continue;
        int total = is_home ? m->home_runs : m->away_runs;
        int extras = total - agg.runs;
        if (extras < 0 || extras > opts.extras_slack) {
            add("batting " + match_id + "/" + team,
                "innings total " + std::to_string(total) + " inconsistent with player runs " +
                    std::to_string(agg.runs) + " (extras slack " +
                    std::to_string(opts.extras_slack) + ")");
        }
    }

    for (const auto& b : corpus.bowling()) {
        std::string where = "bowling " + b.match_id + "/" + b.player_id;
        const MatchRecord* m = corpus.find_match(b.match_id);
        if (m && b.team != m->home_team && b.team != m->away_team)
            add(where, "team \"" + b.team + "\" is not playing in this match");
        if (b.wickets < 0 || b.wickets > 10)
            add(where, "wickets out of range 0..10: " + std::to_string(b.wickets));
        if (b.balls_bowled < 0) add(where, "negative balls_bowled");
        if (b.runs_conceded < 0) add(where, "negative runs_conceded");
        if (!corpus.players().count(b.player_id))
            add(where, "player has no profile in players.csv");
    }

    return report;
}

void ensure_valid(const Corpus& corpus, const ValidationOptions& opts) {
    ValidationReport report = validate_corpus(corpus, opts);
    if (!report.clean()) {
        throw DataError("corpus validation failed with " +
                        std::to_string(report.findings.size()) + " finding(s):\n" +
                        report.to_string());
    }
}

}  // namespace cricpred
