#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cricpred/date.hpp"
#include "cricpred/errors.hpp"

namespace cricpred {

enum class Stage { group, quarter_final, semi_final, finals_day };
enum class Outcome { home_win, away_win, tie, no_result };

std::string to_string(Stage s);
std::string to_string(Outcome o);
std::optional<Stage> parse_stage(const std::string& s);
std::optional<Outcome> parse_outcome(const std::string& s);

// One fixture at scorecard granularity. Overs are held as integer legal
// balls throughout; "12.3 overs" must become 75 balls before it gets here.
struct MatchRecord {
    std::string match_id;
    int season = 0;
    Date date;
    Stage stage = Stage::group;
    std::string home_team;
    std::string away_team;
    Outcome outcome = Outcome::home_win;
    int home_runs = 0, home_balls = 0, home_wickets = 0;
    int away_runs = 0, away_balls = 0, away_wickets = 0;

    bool operator==(const MatchRecord&) const = default;
};

struct BattingLine {
    std::string match_id;
    std::string team;
    std::string player_id;
    int position = 0;  // 1..11
    int runs = 0;
    int balls_faced = 0;
    bool dismissed = false;

    bool operator==(const BattingLine&) const = default;
};

struct BowlingLine {
    std::string match_id;
    std::string team;
    std::string player_id;
    int balls_bowled = 0;
    int runs_conceded = 0;
    int wickets = 0;

    bool operator==(const BowlingLine&) const = default;
};

struct PlayerProfile {
    std::string player_id;
    bool overseas = false;

    bool operator==(const PlayerProfile&) const = default;
};

struct OddsRecord {
    std::string match_id;
    double home_odds = 0;  // decimal odds, strictly > 1
    double away_odds = 0;

    bool operator==(const OddsRecord&) const = default;
};

struct CorpusPaths {
    std::string matches;
    std::string batting;
    std::string bowling;
    std::string players;
    std::string odds;  // optional; empty or missing file -> no odds

    // Conventional file names under one directory.
    static CorpusPaths in_dir(const std::string& dir);
};

// Immutable, cross-referenced view of the raw data. Matches are kept in
// (date, match_id) order; ties and no-results stay in until filter_matches.
class Corpus {
public:
    static Corpus load(const CorpusPaths& paths);
    static Corpus from_records(std::vector<MatchRecord> matches,
                               std::vector<BattingLine> batting,
                               std::vector<BowlingLine> bowling,
                               std::vector<PlayerProfile> players,
                               std::vector<OddsRecord> odds);

    // Writes the five CSV files into `dir`. Loading them back reproduces
    // every field (canonical row order, exact numeric round-trip).
    void save(const std::string& dir) const;

    const std::vector<MatchRecord>& matches() const { return matches_; }
    const std::vector<BattingLine>& batting() const { return batting_; }
    const std::vector<BowlingLine>& bowling() const { return bowling_; }
    const std::map<std::string, PlayerProfile>& players() const { return players_; }
    const std::map<std::string, OddsRecord>& odds() const { return odds_; }

    const MatchRecord* find_match(const std::string& match_id) const;

    // Indices into batting()/bowling() for one match, in file order.
    const std::vector<std::size_t>& batting_of(const std::string& match_id) const;
    const std::vector<std::size_t>& bowling_of(const std::string& match_id) const;

    bool is_overseas(const std::string& player_id) const;

    // Inclusion rule: decisive outcome and not played on finals day.
    static bool included(const MatchRecord& m) {
        return m.stage != Stage::finals_day &&
               (m.outcome == Outcome::home_win || m.outcome == Outcome::away_win);
    }

    // Chronological indices of included matches, overall and per team.
    const std::vector<std::size_t>& included_indices() const { return included_; }
    const std::vector<std::size_t>& team_matches(const std::string& team) const;

    std::vector<int> seasons() const;  // distinct, ascending

    bool operator==(const Corpus& other) const;

private:
    void finalize();

    std::vector<MatchRecord> matches_;
    std::vector<BattingLine> batting_;
    std::vector<BowlingLine> bowling_;
    std::map<std::string, PlayerProfile> players_;
    std::map<std::string, OddsRecord> odds_;

    std::map<std::string, std::size_t> match_index_;
    std::map<std::string, std::vector<std::size_t>> batting_by_match_;
    std::map<std::string, std::vector<std::size_t>> bowling_by_match_;
    std::vector<std::size_t> included_;
    std::map<std::string, std::vector<std::size_t>> team_included_;
};

struct SeasonFilterCounts {
    int games = 0;
    int finals_day = 0;
    int tied = 0;
    int no_result = 0;
    int included = 0;
};

struct FilterResult {
    std::vector<std::size_t> included;  // indices into corpus.matches()
    std::map<int, SeasonFilterCounts> by_season;

    int total_included() const { return static_cast<int>(included.size()); }
};

// Applies the exclusion rules (finals day, ties, no-results) with
// per-season accounting. Finals-day games count once regardless of outcome.
FilterResult filter_matches(const Corpus& corpus);

// The team's most recent `window` included matches strictly before `as_of`,
// oldest first. window <= 0 means the entire prior history.
std::vector<std::size_t> history_before(const Corpus& corpus, const std::string& team,
                                        const Date& as_of, int window);

struct ValidationFinding {
    std::string where;  // "matches.csv m42" style locator
    std::string what;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;

    bool clean() const { return findings.empty(); }
    std::string to_string() const;
};

struct ValidationOptions {
    int extras_slack = 30;  // max runs per innings unexplained by batting lines
};

ValidationReport validate_corpus(const Corpus& corpus, const ValidationOptions& opts = {});

// Strict mode: any finding becomes a DataError enumerating all of them.
void ensure_valid(const Corpus& corpus, const ValidationOptions& opts = {});

}  // namespace cricpred
