#include "doctest.h"

#include <sstream>

#include "cricpred/corpus.hpp"
#include "cricpred/date.hpp"
#include "test_util.hpp"

using namespace cricpred;
using testutil::TmpDir;
using testutil::make_match;
using testutil::write_file;

namespace {

const char* kMatchesCsv =
    "match_id,season,date,stage,home_team,away_team,outcome,"
    "home_runs,home_balls,home_wickets,away_runs,away_balls,away_wickets\n"
    "m1,2010,2010-06-01,group,Kent,Essex,home_win,170,120,4,150,120,8\n"
    "m2,2010,2010-06-03,group,Essex,Kent,away_win,140,118,9,60,30,2\n";

const char* kBattingCsv =
    "match_id,team,player_id,position,runs,balls_faced,dismissed\n"
    "m1,Kent,k1,1,80,50,0\n"
    "m1,Kent,k2,2,70,55,1\n"
    "m1,Essex,e1,1,75,60,1\n"
    "m2,Essex,e1,1,60,48,1\n";

const char* kBowlingCsv =
    "match_id,team,player_id,balls_bowled,runs_conceded,wickets\n"
    "m1,Essex,e9,24,35,2\n"
    "m1,Kent,k9,24,30,3\n"
    "m2,Kent,k9,18,40,1\n";

const char* kPlayersCsv =
    "player_id,overseas\n"
    "k1,0\nk2,1\ne1,0\ne9,0\nk9,0\n";

CorpusPaths write_fixture(const TmpDir& dir, bool with_odds = false) {
    write_file(dir.file("matches.csv"), kMatchesCsv);
    write_file(dir.file("batting.csv"), kBattingCsv);
    write_file(dir.file("bowling.csv"), kBowlingCsv);
    write_file(dir.file("players.csv"), kPlayersCsv);
    if (with_odds) {
        write_file(dir.file("odds.csv"),
                   "match_id,home_odds,away_odds\nm1,1.8,2.1\nm2,2.5,1.55\n");
    }
    return CorpusPaths::in_dir(dir.str());
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("date parsing is strict") {
    CHECK(parse_date("2010-06-01").has_value());
    CHECK(*parse_date("2010-06-01") == Date{2010, 6, 1});
    CHECK_FALSE(parse_date("2010-6-1").has_value());
    CHECK_FALSE(parse_date("2010-13-01").has_value());
    CHECK_FALSE(parse_date("2010-02-30").has_value());
    CHECK(parse_date("2012-02-29").has_value());  // leap year
    CHECK_FALSE(parse_date("2011-02-29").has_value());
    CHECK(to_string(Date{2010, 6, 1}) == "2010-06-01");
}

TEST_CASE("overs notation converts to balls") {
    CHECK(balls_from_overs(12.3) == 75);
    CHECK(balls_from_overs(20.0) == 120);
    CHECK(balls_from_overs(0.5) == 5);
    CHECK(balls_from_overs(4.0) == 24);
}

TEST_CASE("loads a valid fixture") {
    TmpDir dir("load");
    Corpus c = Corpus::load(write_fixture(dir));
    CHECK(c.matches().size() == 2);
    CHECK(c.batting().size() == 4);
    CHECK(c.bowling().size() == 3);
    CHECK(c.players().size() == 5);
    CHECK(c.odds().empty());  // odds file absent -> empty mapping, success
    CHECK(c.matches()[0].match_id == "m1");  // chronological
    CHECK(c.find_match("m2") != nullptr);
    CHECK(c.find_match("nope") == nullptr);
    CHECK(c.is_overseas("k2"));
    CHECK_FALSE(c.is_overseas("k1"));
}

TEST_CASE("loads odds when present") {
    TmpDir dir("odds");
    Corpus c = Corpus::load(write_fixture(dir, true));
    CHECK(c.odds().size() == 2);
    CHECK(c.odds().at("m1").home_odds == doctest::Approx(1.8));
}

TEST_CASE("batting line with unknown match id is a referential error") {
    TmpDir dir("dangling");
    write_fixture(dir);
    write_file(dir.file("batting.csv"),
               "match_id,team,player_id,position,runs,balls_faced,dismissed\n"
               "mX,Kent,k1,1,10,9,0\n");
    CHECK_THROWS_WITH_AS(Corpus::load(CorpusPaths::in_dir(dir.str())),
                         doctest::Contains("unknown match_id"), DataError);
}

TEST_CASE("malformed rows name file, line and column") {
    TmpDir dir("badrow");
    write_fixture(dir);
    write_file(dir.file("bowling.csv"),
               "match_id,team,player_id,balls_bowled,runs_conceded,wickets\n"
               "m1,Essex,e9,24,abc,2\n");
    try {
        Corpus::load(CorpusPaths::in_dir(dir.str()));
        FAIL("expected DataError");
    } catch (const DataError& e) {
        std::string msg = e.what();
        CHECK(msg.find("bowling.csv:2:5") != std::string::npos);
        CHECK(msg.find("abc") != std::string::npos);
    }
}

TEST_CASE("header mismatch is rejected") {
    TmpDir dir("badheader");
    write_fixture(dir);
    write_file(dir.file("players.csv"), "player,overseas\nk1,0\n");
    CHECK_THROWS_AS(Corpus::load(CorpusPaths::in_dir(dir.str())), DataError);
}

TEST_CASE("odds must be strictly greater than 1") {
    TmpDir dir("badodds");
    write_fixture(dir);
    write_file(dir.file("odds.csv"), "match_id,home_odds,away_odds\nm1,1.0,2.0\n");
    CHECK_THROWS_WITH_AS(Corpus::load(CorpusPaths::in_dir(dir.str())),
                         doctest::Contains("odds"), DataError);
}

TEST_CASE("filter matches reproduces the historical exclusion accounting") {
    // Per-season (games, finals-day, tied, no-result) rows with their
    // published included totals.
    struct Row {
        int season, games, finals, tied, no_result, included;
    };
    const std::vector<Row> rows = {
        {2003, 48, 3, 0, 0, 45},   {2004, 52, 3, 0, 4, 45},   {2005, 70, 3, 0, 11, 56},
        {2006, 70, 3, 1, 2, 64},   {2007, 70, 3, 1, 20, 46},  {2008, 97, 3, 3, 10, 81},
        {2009, 97, 3, 0, 3, 91},   {2010, 151, 3, 3, 5, 140}, {2011, 151, 3, 2, 23, 123},
        {2012, 97, 3, 1, 20, 73},  {2013, 97, 3, 2, 1, 91},   {2014, 133, 3, 1, 12, 117},
    };

    std::vector<MatchRecord> ms;
    for (const auto& r : rows) {
        int made = 0;
        auto add = [&](Outcome o, Stage st) {
            ++made;
            std::string id = "m" + std::to_string(r.season) + "_" + std::to_string(made);
            std::string date = std::to_string(r.season) + "-06-01";
            ms.push_back(make_match(id, r.season, date, "A" + std::to_string(made % 9),
                                    "B" + std::to_string(made % 7), o, st));
        };
        for (int i = 0; i < r.finals; ++i) add(Outcome::home_win, Stage::finals_day);
        for (int i = 0; i < r.tied; ++i) add(Outcome::tie, Stage::group);
        for (int i = 0; i < r.no_result; ++i) add(Outcome::no_result, Stage::group);
        for (int i = 0; i < r.games - r.finals - r.tied - r.no_result; ++i) {
            add(i % 2 ? Outcome::home_win : Outcome::away_win, Stage::group);
        }
    }
    Corpus c = Corpus::from_records(ms, {}, {}, {}, {});
    FilterResult f = filter_matches(c);

    int grand_total = 0;
    for (const auto& r : rows) {
        const auto& s = f.by_season.at(r.season);
        CHECK(s.games == r.games);
        CHECK(s.finals_day == r.finals);
        CHECK(s.tied == r.tied);
        CHECK(s.no_result == r.no_result);
        CHECK(s.included == r.included);
        grand_total += s.included;
    }
    CHECK(grand_total == 972);
    CHECK(f.total_included() == 972);
}

TEST_CASE("filtering an empty corpus yields an empty set") {
    Corpus c = Corpus::from_records({}, {}, {}, {}, {});
    CHECK(filter_matches(c).included.empty());
}

TEST_CASE("filter is idempotent") {
    auto synth = testutil::small_synthetic(11, 2, 6, 4);
    FilterResult once = filter_matches(synth.corpus);
    std::vector<MatchRecord> kept;
    for (auto idx : once.included) kept.push_back(synth.corpus.matches()[idx]);
    Corpus again = Corpus::from_records(kept, {}, {}, {}, {});
    FilterResult twice = filter_matches(again);
    CHECK(twice.total_included() == once.total_included());
}

TEST_CASE("history_before basics") {
    std::vector<MatchRecord> ms;
    for (int i = 0; i < 5; ++i) {
        ms.push_back(make_match("m" + std::to_string(i), 2010,
                                "2010-06-0" + std::to_string(i + 1), "Kent", "Essex"));
    }
    Corpus c = Corpus::from_records(ms, {}, {}, {}, {});

    CHECK(history_before(c, "Sussex", *parse_date("2010-07-01"), 0).empty());

    auto h = history_before(c, "Kent", *parse_date("2010-07-01"), 3);
    REQUIRE(h.size() == 3);  // the 3 most recent of 5
    CHECK(c.matches()[h[0]].match_id == "m2");
    CHECK(c.matches()[h[2]].match_id == "m4");

    // A match's own date is excluded: strict inequality.
    auto own = history_before(c, "Kent", *parse_date("2010-06-03"), 0);
    CHECK(own.size() == 2);
    for (auto idx : own) CHECK(c.matches()[idx].date < *parse_date("2010-06-03"));
}

TEST_CASE("history_before never leaks matches at or after as_of") {
    auto synth = testutil::small_synthetic(7, 3, 6, 5);
    const Corpus& c = synth.corpus;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick_day(1, 28);
    std::uniform_int_distribution<int> pick_month(4, 9);
    std::uniform_int_distribution<int> pick_year(2008, 2011);
    std::uniform_int_distribution<int> pick_window(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        Date as_of{pick_year(rng), pick_month(rng), pick_day(rng)};
        std::string team = "T0" + std::to_string(1 + trial % 6);
        for (auto idx : history_before(c, team, as_of, pick_window(rng))) {
            CHECK(c.matches()[idx].date < as_of);
            bool involved = c.matches()[idx].home_team == team ||
                            c.matches()[idx].away_team == team;
            CHECK(involved);
        }
    }
}

TEST_CASE("save then load round-trips every field") {
    auto synth = testutil::small_synthetic(21, 2, 6, 4);
    TmpDir dir("roundtrip");
    synth.corpus.save(dir.str());
    Corpus reloaded = Corpus::load(CorpusPaths::in_dir(dir.str()));
    CHECK(reloaded == synth.corpus);

    TmpDir dir2("roundtrip2");
    reloaded.save(dir2.str());
    Corpus again = Corpus::load(CorpusPaths::in_dir(dir2.str()));
    CHECK(again == reloaded);
}

TEST_CASE("validation flags out-of-range and duplicate findings") {
    TmpDir dir("validate");
    Corpus clean = Corpus::load(write_fixture(dir));
    CHECK(validate_corpus(clean).clean());
    CHECK_NOTHROW(ensure_valid(clean));

    // wickets out of range
    std::vector<MatchRecord> ms = {make_match("m1", 2010, "2010-06-01", "Kent", "Essex")};
    ms[0].home_wickets = 11;
    Corpus bad = Corpus::from_records(ms, {}, {}, {}, {});
    ValidationReport r = validate_corpus(bad);
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].what.find("wickets_lost out of range") != std::string::npos);
    CHECK_THROWS_AS(ensure_valid(bad), DataError);

    // duplicate batting position within one innings
    std::vector<MatchRecord> ms2 = {make_match("m1", 2010, "2010-06-01", "Kent", "Essex")};
    std::vector<BattingLine> bs = {
        {"m1", "Kent", "k1", 4, 10, 8, false},
        {"m1", "Kent", "k2", 4, 12, 9, true},
    };
    std::vector<PlayerProfile> ps = {{"k1", false}, {"k2", false}};
    Corpus dup = Corpus::from_records(ms2, bs, {}, ps, {});
    ValidationReport r2 = validate_corpus(dup);
    bool found = false;
    for (const auto& f : r2.findings) {
        if (f.what.find("duplicate batting position 4") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("validation distinguishes extras slack from real mismatches") {
    std::vector<MatchRecord> ms = {make_match("m1", 2010, "2010-06-01", "Kent", "Essex")};
    ms[0].home_runs = 160;
    std::vector<PlayerProfile> ps = {{"k1", false}};
    // 140 batted runs + 20 extras: inside the default 30-run slack.
    std::vector<BattingLine> ok = {{"m1", "Kent", "k1", 1, 140, 70, true}};
    CHECK(validate_corpus(Corpus::from_records(ms, ok, {}, ps, {})).clean());
    // 100 batted runs: 60 unexplained, outside the slack.
    std::vector<BattingLine> low = {{"m1", "Kent", "k1", 1, 100, 70, true}};
    CHECK_FALSE(validate_corpus(Corpus::from_records(ms, low, {}, ps, {})).clean());
    // Player runs above the innings total are impossible.
    std::vector<BattingLine> high = {{"m1", "Kent", "k1", 1, 170, 70, true}};
    CHECK_FALSE(validate_corpus(Corpus::from_records(ms, high, {}, ps, {})).clean());
    // Custom slack tightens the tolerance.
    ValidationOptions tight;
    tight.extras_slack = 10;
    CHECK_FALSE(validate_corpus(Corpus::from_records(ms, ok, {}, ps, {}), tight).clean());
}

TEST_CASE("tie with unequal scores and season-year mismatch are findings") {
    std::vector<MatchRecord> ms = {
        make_match("m1", 2010, "2010-06-01", "Kent", "Essex", Outcome::tie)};
    ms[0].away_runs = 150;  // tie must have equal runs
    Corpus c1 = Corpus::from_records(ms, {}, {}, {}, {});
    CHECK_FALSE(validate_corpus(c1).clean());

    std::vector<MatchRecord> ms2 = {make_match("m2", 2011, "2010-06-01", "Kent", "Essex")};
    Corpus c2 = Corpus::from_records(ms2, {}, {}, {}, {});
    CHECK_FALSE(validate_corpus(c2).clean());
}

}  // TEST_SUITE
