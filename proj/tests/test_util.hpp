#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "cricpred/corpus.hpp"
#include "cricpred/synthgen.hpp"

namespace testutil {

// Scratch directory removed on destruction.
class TmpDir {
public:
    explicit TmpDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("cricpred_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TmpDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TmpDir(const TmpDir&) = delete;
    TmpDir& operator=(const TmpDir&) = delete;

    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline cricpred::MatchRecord make_match(const std::string& id, int season,
                                        const std::string& date, const std::string& home,
                                        const std::string& away,
                                        cricpred::Outcome outcome = cricpred::Outcome::home_win,
                                        cricpred::Stage stage = cricpred::Stage::group) {
    cricpred::MatchRecord m;
    m.match_id = id;
    m.season = season;
    m.date = *cricpred::parse_date(date);
    m.stage = stage;
    m.home_team = home;
    m.away_team = away;
    m.outcome = outcome;
    m.home_runs = 160;
    m.home_balls = 120;
    m.home_wickets = 5;
    m.away_runs = outcome == cricpred::Outcome::tie ? 160 : 150;
    m.away_balls = 120;
    m.away_wickets = 7;
    return m;
}

// Small deterministic synthetic corpus for property tests.
inline cricpred::SyntheticCorpus small_synthetic(std::uint64_t seed, int n_seasons = 3,
                                                 int n_teams = 6, int matches_per_team = 5) {
    cricpred::GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n_teams = n_teams;
    for (int s = 0; s < n_seasons; ++s) cfg.seasons.push_back(2008 + s);
    cfg.matches_per_team = matches_per_team;
    cfg.squad_size = 13;
    return cricpred::generate_corpus(cfg);
}

}  // namespace testutil
