#include "doctest.h"

#include <cmath>
#include <set>

#include "cricpred/team_features.hpp"
#include "test_util.hpp"

using namespace cricpred;
using testutil::make_match;

namespace {

MatchRecord scored_match(const std::string& id, const std::string& date, const std::string& home,
                         const std::string& away, int hr, int hb, int hw, int ar, int ab, int aw) {
    MatchRecord m = make_match(id, 2010, date, home, away,
                               hr > ar ? Outcome::home_win : Outcome::away_win);
    m.home_runs = hr;
    m.home_balls = hb;
    m.home_wickets = hw;
    m.away_runs = ar;
    m.away_balls = ab;
    m.away_wickets = aw;
    return m;
}

Corpus truncated_at(const Corpus& corpus, const Date& cutoff, const std::string& keep_match) {
    std::vector<MatchRecord> ms;
    for (const auto& m : corpus.matches()) {
        if (m.date < cutoff || m.match_id == keep_match) ms.push_back(m);
    }
    return Corpus::from_records(ms, {}, {}, {}, {});
}

}  // namespace

TEST_SUITE("teamfeat") {

TEST_CASE("level 1 pooled arithmetic") {
    std::vector<MatchRecord> ms = {
        scored_match("m1", "2010-06-01", "Kent", "Essex", 160, 120, 4, 100, 120, 9),
        scored_match("m2", "2010-06-03", "Kent", "Sussex", 200, 120, 6, 150, 120, 8),
    };
    Corpus c = Corpus::from_records(ms, {}, {}, {}, {});
    auto l1 = team_level1(c, "Kent", *parse_date("2010-07-01"), 0);
    REQUIRE(l1.has_value());
    CHECK(l1->bat_run_rate == doctest::Approx(6.0 * 360 / 240).epsilon(1e-12));  // 9.0
    CHECK(l1->bat_run_rate == doctest::Approx(9.0));
    CHECK(l1->win_pct == doctest::Approx(1.0));
    CHECK(l1->bat_avg == doctest::Approx(360.0 / 10.0));
    CHECK(l1->bowl_economy == doctest::Approx(6.0 * 250 / 240));
    CHECK(l1->bowl_avg == doctest::Approx(250.0 / 17.0));
    CHECK(l1->bat_wicket_rate == doctest::Approx(10.0 / 240.0));
    CHECK(l1->bowl_strike_rate == doctest::Approx(17.0 / 240.0));
    CHECK(l1->bat_index == doctest::Approx(9.0 * 36.0));
}

TEST_CASE("win percentage counts wins over games") {
    std::vector<MatchRecord> ms;
    for (int i = 0; i < 4; ++i) {
        // Kent home, wins 3 of 4.
        ms.push_back(scored_match("m" + std::to_string(i), "2010-06-0" + std::to_string(i + 1),
                                  "Kent", "Essex", i < 3 ? 160 : 140, 120, 5,
                                  i < 3 ? 140 : 160, 120, 7));
    }
    Corpus c = Corpus::from_records(ms, {}, {}, {}, {});
    auto l1 = team_level1(c, "Kent", *parse_date("2010-07-01"), 0);
    REQUIRE(l1.has_value());
    CHECK(l1->win_pct == doctest::Approx(0.75));
}

TEST_CASE("zero wickets lost floors the denominator") {
    std::vector<MatchRecord> ms = {
        scored_match("m1", "2010-06-01", "Kent", "Essex", 180, 120, 0, 120, 120, 9)};
    Corpus c = Corpus::from_records(ms, {}, {}, {}, {});
    auto l1 = team_level1(c, "Kent", *parse_date("2010-07-01"), 0);
    REQUIRE(l1.has_value());
    CHECK(l1->bat_avg == doctest::Approx(180.0 / 1.0));  // floored at 1 wicket
    CHECK(l1->bat_wicket_rate == doctest::Approx(0.0));
}

TEST_CASE("empty history signals insufficient data") {
    Corpus c = Corpus::from_records({}, {}, {}, {}, {});
    CHECK_FALSE(team_level1(c, "Kent", *parse_date("2010-07-01"), 0).has_value());
}

TEST_CASE("level 2 nets and level 3 differences") {
    TeamLevel1 l1{};
    l1.bat_run_rate = 8.5;
    l1.bowl_economy = 8.5;
    l1.bat_avg = 30;
    l1.bowl_avg = 25;
    l1.bat_wicket_rate = 0.05;
    l1.bowl_strike_rate = 0.08;
    l1.bat_index = 100;
    l1.bowl_index = 100;
    TeamLevel2 l2 = team_level2(l1);
    CHECK(l2.net_run_rate == 0.0);
    CHECK(l2.net_avg == 5.0);
    CHECK(l2.net_wicket_rate == doctest::Approx(0.03));
    CHECK(l2.net_index == 0.0);

    TeamLevel3 same = team_level3(l1, l2, l1, l2);
    CHECK(same.win_pct_diff == 0.0);
    CHECK(same.net_run_rate_diff == 0.0);
    CHECK(same.net_avg_diff == 0.0);
    CHECK(same.net_wicket_rate_diff == 0.0);
    CHECK(same.net_index_diff == 0.0);

    TeamLevel1 other = l1;
    other.win_pct = 0.25;
    l1.win_pct = 0.75;
    TeamLevel2 lo = team_level2(other);
    lo.net_run_rate = -0.3;
    TeamLevel2 lh = l2;
    lh.net_run_rate = 1.2;
    TeamLevel3 d = team_level3(l1, lh, other, lo);
    CHECK(d.net_run_rate_diff == doctest::Approx(1.5));
    TeamLevel3 swapped = team_level3(other, lo, l1, lh);
    CHECK(swapped.net_run_rate_diff == doctest::Approx(-d.net_run_rate_diff));
    CHECK(swapped.win_pct_diff == doctest::Approx(-d.win_pct_diff));
}

TEST_CASE("feature set sizes and the 31-feature union") {
    CHECK(team_feature_names(TeamFeatureSet::set1).size() == 14);
    CHECK(team_feature_names(TeamFeatureSet::set2).size() == 18);
    CHECK(team_feature_names(TeamFeatureSet::set3).size() == 8);
    CHECK(team_feature_names(TeamFeatureSet::set4).size() == 10);
    CHECK(team_feature_names(TeamFeatureSet::set5).size() == 4);
    CHECK(team_feature_names(TeamFeatureSet::set6).size() == 5);

    std::set<std::string> all;
    for (auto set : {TeamFeatureSet::set1, TeamFeatureSet::set2, TeamFeatureSet::set3,
                     TeamFeatureSet::set4, TeamFeatureSet::set5, TeamFeatureSet::set6}) {
        for (const auto& n : team_feature_names(set)) all.insert(n);
    }
    CHECK(all.size() == 31);

    const auto& reg = team_feature_registry();
    CHECK(reg.size() == 31);
    int by_level[4] = {0, 0, 0, 0};
    for (const auto& [name, info] : reg) ++by_level[info.level];
    CHECK(by_level[1] == 18);
    CHECK(by_level[2] == 8);
    CHECK(by_level[3] == 5);
    for (const auto& n : all) CHECK(reg.count(n) == 1);
}

TEST_CASE("matrix columns follow the set definition and level identities hold exactly") {
    auto synth = testutil::small_synthetic(31, 3, 6, 6);
    const Corpus& c = synth.corpus;

    FeatureMatrix m = build_team_matrix(c, TeamFeatureSet::all31);
    CHECK(m.n_cols() == 31);
    CHECK(m.n_rows() > 0);

    auto col = [&](const char* name) { return m.col_index(name); };
    for (std::size_t i = 0; i < m.n_rows(); ++i) {
        const auto& r = m.rows[i];
        for (const char* side : {"home", "away"}) {
            std::string s(side);
            CHECK(r[col((s + "_net_run_rate").c_str())] ==
                  r[col((s + "_bat_run_rate").c_str())] - r[col((s + "_bowl_economy").c_str())]);
            CHECK(r[col((s + "_net_avg").c_str())] ==
                  r[col((s + "_bat_avg").c_str())] - r[col((s + "_bowl_avg").c_str())]);
            CHECK(r[col((s + "_net_wicket_rate").c_str())] ==
                  r[col((s + "_bowl_strike_rate").c_str())] -
                      r[col((s + "_bat_wicket_rate").c_str())]);
            CHECK(r[col((s + "_net_index").c_str())] ==
                  r[col((s + "_bat_index").c_str())] - r[col((s + "_bowl_index").c_str())]);
        }
        CHECK(r[col("win_pct_diff")] == r[col("home_win_pct")] - r[col("away_win_pct")]);
        CHECK(r[col("net_run_rate_diff")] ==
              r[col("home_net_run_rate")] - r[col("away_net_run_rate")]);
        CHECK(r[col("net_avg_diff")] == r[col("home_net_avg")] - r[col("away_net_avg")]);
        CHECK(r[col("net_wicket_rate_diff")] ==
              r[col("home_net_wicket_rate")] - r[col("away_net_wicket_rate")]);
        CHECK(r[col("net_index_diff")] == r[col("home_net_index")] - r[col("away_net_index")]);
    }

    FeatureMatrix s6 = build_team_matrix(c, TeamFeatureSet::set6);
    CHECK(s6.columns == team_feature_names(TeamFeatureSet::set6));
    CHECK(s6.n_rows() == m.n_rows());
}

TEST_CASE("swapping home and away negates level 3 and mirrors level 1") {
    auto synth = testutil::small_synthetic(17, 2, 6, 6);
    const Corpus& c = synth.corpus;

    std::vector<MatchRecord> swapped;
    for (MatchRecord m : c.matches()) {
        std::swap(m.home_team, m.away_team);
        std::swap(m.home_runs, m.away_runs);
        std::swap(m.home_balls, m.away_balls);
        std::swap(m.home_wickets, m.away_wickets);
        if (m.outcome == Outcome::home_win) {
            m.outcome = Outcome::away_win;
        } else if (m.outcome == Outcome::away_win) {
            m.outcome = Outcome::home_win;
        }
        swapped.push_back(std::move(m));
    }
    Corpus cs = Corpus::from_records(swapped, {}, {}, {}, {});

    FeatureMatrix a = build_team_matrix(c, TeamFeatureSet::all31);
    FeatureMatrix b = build_team_matrix(cs, TeamFeatureSet::all31);
    REQUIRE(a.n_rows() == b.n_rows());
    for (std::size_t i = 0; i < a.n_rows(); ++i) {
        REQUIRE(a.match_ids[i] == b.match_ids[i]);
        CHECK(a.labels[i] == 1 - b.labels[i]);
        for (const auto& [name, info] : team_feature_registry()) {
            double va = a.rows[i][a.col_index(name)];
            if (info.level == 3) {
                CHECK(va == -b.rows[i][b.col_index(name)]);
            } else {
                std::string mirrored =
                    (info.side == "home" ? "away_" : "home_") + info.statistic;
                CHECK(va == b.rows[i][b.col_index(mirrored)]);
            }
        }
    }
}

TEST_CASE("no leakage: truncating at a row's date reproduces the row bit-exactly") {
    auto synth = testutil::small_synthetic(23, 3, 6, 6);
    const Corpus& c = synth.corpus;
    FeatureMatrix full = build_team_matrix(c, TeamFeatureSet::all31);
    REQUIRE(full.n_rows() > 20);

    for (std::size_t i : {std::size_t(5), full.n_rows() / 2, full.n_rows() - 1}) {
        Corpus cut = truncated_at(c, full.dates[i], full.match_ids[i]);
        FeatureMatrix part = build_team_matrix(cut, TeamFeatureSet::all31);
        bool found = false;
        for (std::size_t j = 0; j < part.n_rows(); ++j) {
            if (part.match_ids[j] != full.match_ids[i]) continue;
            found = true;
            for (std::size_t k = 0; k < part.n_cols(); ++k) {
                CHECK(part.rows[j][k] == full.rows[i][k]);  // bit-exact
            }
        }
        CHECK(found);
    }
}

TEST_CASE("with the full window, future matches never change earlier rows") {
    auto synth = testutil::small_synthetic(29, 3, 6, 5);
    const Corpus& c = synth.corpus;
    FeatureMatrix full = build_team_matrix(c, TeamFeatureSet::all31);

    // Rebuild on the first two seasons only.
    std::vector<MatchRecord> early;
    for (const auto& m : c.matches()) {
        if (m.season <= 2009) early.push_back(m);
    }
    Corpus ce = Corpus::from_records(early, {}, {}, {}, {});
    FeatureMatrix part = build_team_matrix(ce, TeamFeatureSet::all31);

    REQUIRE(part.n_rows() > 0);
    for (std::size_t j = 0; j < part.n_rows(); ++j) {
        CHECK(part.match_ids[j] == full.match_ids[j]);
        for (std::size_t k = 0; k < part.n_cols(); ++k) {
            CHECK(part.rows[j][k] == full.rows[j][k]);
        }
    }
}

TEST_CASE("short-history rows impute or drop per config") {
    auto synth = testutil::small_synthetic(41, 1, 4, 6);
    const Corpus& c = synth.corpus;
    std::size_t included = c.included_indices().size();

    TeamFeatureConfig imputing;  // default: impute
    FeatureMatrix with_imputation = build_team_matrix(c, TeamFeatureSet::set6, imputing);
    CHECK(with_imputation.n_rows() == included);

    TeamFeatureConfig dropping;
    dropping.impute = false;
    TeamBuildInfo info;
    FeatureMatrix dropped = build_team_matrix(c, TeamFeatureSet::set6, dropping, &info);
    CHECK(dropped.n_rows() < included);
    CHECK(info.dropped_rows == static_cast<int>(included - dropped.n_rows()));

    // Imputed sides carry league means: every net feature is exactly 0.
    TeamFeatureConfig strict_window = imputing;
    FeatureMatrix m31 = build_team_matrix(c, TeamFeatureSet::all31, strict_window);
    const auto& first = m31.rows.front();  // nobody has history yet
    CHECK(first[m31.col_index("home_net_run_rate")] == 0.0);
    CHECK(first[m31.col_index("away_net_index")] == 0.0);
    CHECK(first[m31.col_index("home_win_pct")] == 0.5);
}

TEST_CASE("windowed pooling uses only the most recent games") {
    std::vector<MatchRecord> ms = {
        scored_match("m1", "2010-06-01", "Kent", "Essex", 100, 120, 5, 90, 120, 5),
        scored_match("m2", "2010-06-02", "Kent", "Essex", 120, 120, 5, 90, 120, 5),
        scored_match("m3", "2010-06-03", "Kent", "Essex", 180, 120, 5, 90, 120, 5),
        scored_match("m4", "2010-06-04", "Kent", "Essex", 240, 120, 5, 90, 120, 5),
    };
    Corpus c = Corpus::from_records(ms, {}, {}, {}, {});
    auto all = team_level1(c, "Kent", *parse_date("2010-07-01"), 0);
    auto last2 = team_level1(c, "Kent", *parse_date("2010-07-01"), 2);
    REQUIRE(all);
    REQUIRE(last2);
    CHECK(all->bat_run_rate == doctest::Approx(6.0 * 640 / 480));
    CHECK(last2->bat_run_rate == doctest::Approx(6.0 * 420 / 240));
}

TEST_CASE("home advantage by season") {
    std::vector<MatchRecord> ms;
    for (int i = 0; i < 10; ++i) {
        ms.push_back(make_match("m" + std::to_string(i), 2010,
                                i < 9 ? "2010-06-0" + std::to_string(i + 1) : "2010-06-10",
                                "A" + std::to_string(i), "B" + std::to_string(i),
                                i < 6 ? Outcome::home_win : Outcome::away_win));
    }
    Corpus c = Corpus::from_records(ms, {}, {}, {}, {});
    auto series = home_advantage_by_season(c);
    CHECK(series.at(2010) == doctest::Approx(0.6));

    std::vector<MatchRecord> all_home;
    for (int i = 0; i < 5; ++i) {
        all_home.push_back(make_match("h" + std::to_string(i), 2011,
                                      "2011-06-0" + std::to_string(i + 1), "A", "B",
                                      Outcome::home_win));
    }
    Corpus c2 = Corpus::from_records(all_home, {}, {}, {}, {});
    CHECK(home_advantage_by_season(c2).at(2011) == doctest::Approx(1.0));
}

TEST_CASE("generator home advantage shows up in the season series") {
    GeneratorConfig cfg;
    cfg.seed = 5;
    cfg.n_teams = 10;
    cfg.seasons = {2010, 2011, 2012, 2013};
    cfg.matches_per_team = 9;
    cfg.team_skill_spread = 0.0;
    cfg.home_advantage = 0.8;  // sigmoid(0.8) ~ 0.69
    auto synth = generate_corpus(cfg);
    auto series = home_advantage_by_season(synth.corpus);

    double expected = 1.0 / (1.0 + std::exp(-0.8));
    int total = static_cast<int>(synth.corpus.included_indices().size());
    double sigma = std::sqrt(expected * (1 - expected) / total);
    double mean = 0;
    for (const auto& [season, rate] : series) mean += rate;
    mean /= static_cast<double>(series.size());
    CHECK(std::fabs(mean - expected) < 3 * sigma);
}

}  // TEST_SUITE
