#include "cricpred/backtest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cricpred/csv.hpp"
#include "cricpred/rng.hpp"

namespace cricpred {

using ordered_json = nlohmann::ordered_json;

std::string FeaturePlan::describe() const {
    std::ostringstream os;
    switch (mode) {
        case Mode::team:
            os << "team:";
            if (team_set == TeamFeatureSet::all31) {
                os << "all";
            } else {
                os << "set" << static_cast<int>(team_set);
            }
            break;
        case Mode::player:
            os << "player";
            break;
        case Mode::combined:
            os << "combined:";
            if (team_set == TeamFeatureSet::all31) {
                os << "all";
            } else {
                os << "set" << static_cast<int>(team_set);
            }
            break;
    }
    if (team_config.window > 0) os << " window=" << team_config.window;
    if (!restrict_columns.empty()) os << " restricted to " << restrict_columns.size() << " columns";
    return os.str();
}

FeatureMatrix build_features(const Corpus& corpus, const FeaturePlan& plan) {
    FeatureMatrix m;
    switch (plan.mode) {
        case FeaturePlan::Mode::team:
            m = build_team_matrix(corpus, plan.team_set, plan.team_config);
            break;
        case FeaturePlan::Mode::player:
            m = build_player_matrix(corpus, plan.player_config);
            break;
        case FeaturePlan::Mode::combined: {
            FeatureMatrix team = build_team_matrix(corpus, plan.team_set, plan.team_config);
            FeatureMatrix player = build_player_matrix(corpus, plan.player_config);
            if (team.n_rows() != player.n_rows()) {
                // Player rows can drop matches with underivable lineups;
                // restrict the team matrix to the shared matches.
                std::set<std::string> keep(player.match_ids.begin(), player.match_ids.end());
                FeatureMatrix reduced;
                reduced.columns = team.columns;
                for (std::size_t i = 0; i < team.n_rows(); ++i) {
                    if (!keep.count(team.match_ids[i])) continue;
                    reduced.match_ids.push_back(team.match_ids[i]);
                    reduced.seasons.push_back(team.seasons[i]);
                    reduced.dates.push_back(team.dates[i]);
                    reduced.labels.push_back(team.labels[i]);
                    reduced.rows.push_back(team.rows[i]);
                }
                team = std::move(reduced);
            }
            m = team.hcat(player);
            break;
        }
    }
    if (!plan.restrict_columns.empty()) m = m.select_columns(plan.restrict_columns);
    return m;
}

SplitPlan rolling_splits(const std::vector<int>& seasons_present,
                         const std::vector<int>& test_seasons, int window_seasons) {
    std::set<int> present(seasons_present.begin(), seasons_present.end());
    SplitPlan plan;
    plan.window_seasons = window_seasons;
    std::set<int> tests(test_seasons.begin(), test_seasons.end());
    for (int season : tests) {
        if (!present.count(season)) {
            throw DataError("test season " + std::to_string(season) + " has no data");
        }
        SplitPlan::Pair pair;
        pair.test_season = season;
        for (int s : present) {
            if (s < season) pair.train_seasons.push_back(s);
        }
        if (pair.train_seasons.empty()) {
            throw DataError("test season " + std::to_string(season) +
                            " has no prior seasons to train on");
        }
        if (window_seasons > 0 &&
            static_cast<int>(pair.train_seasons.size()) > window_seasons) {
            pair.train_seasons.erase(pair.train_seasons.begin(),
                                     pair.train_seasons.end() - window_seasons);
        }
        plan.pairs.push_back(std::move(pair));
    }
    return plan;
}

BacktestReport run_backtest(const Corpus& corpus, const FeaturePlan& features,
                            const ModelSpec& model, const SplitPlan& splits) {
    FeatureMatrix matrix = build_features(corpus, features);

    BacktestReport report;
    report.feature_description = features.describe();
    report.model_kind = to_string(model.kind);
    report.seed = model.seed;
    report.window_seasons = splits.window_seasons;

    for (std::size_t p = 0; p < splits.pairs.size(); ++p) {
        const auto& pair = splits.pairs[p];
        report.test_seasons.push_back(pair.test_season);
        FeatureMatrix train = matrix.filter_seasons(pair.train_seasons);
        FeatureMatrix test = matrix.filter_seasons({pair.test_season});
        if (train.n_rows() == 0) {
            throw DataError("split for season " + std::to_string(pair.test_season) +
                            ": empty training set");
        }

        ModelSpec pair_spec = model;
        pair_spec.seed = derive_seed(model.seed, static_cast<std::uint64_t>(pair.test_season));
        TrainedModel fitted;
        try {
            fitted = fit_model(pair_spec, matrix.columns, train.rows, train.labels);
        } catch (const std::exception& e) {
            throw DataError("training failed for test season " +
                            std::to_string(pair.test_season) + ": " + e.what());
        }

        auto& season_acc = report.per_season[pair.test_season];
        std::vector<MatchPrediction> season_records;
        for (std::size_t i = 0; i < test.n_rows(); ++i) {
            MatchPrediction rec;
            rec.match_id = test.match_ids[i];
            rec.season = test.seasons[i];
            rec.date = test.dates[i];
            rec.p_home = fitted.predict_proba(test.rows[i]);
            rec.predicted = rec.p_home >= 0.5 ? 1 : 0;
            rec.actual = test.labels[i];
            ++season_acc.n;
            if (rec.correct()) ++season_acc.correct;
            season_records.push_back(rec);
        }
        report.cumulative[pair.test_season] = cumulative_accuracy(season_records);
        report.records.insert(report.records.end(), season_records.begin(),
                              season_records.end());
    }

    for (const auto& [season, acc] : report.per_season) {
        report.total_n += acc.n;
        report.total_correct += acc.correct;
    }
    report.overall_accuracy =
        report.total_n == 0 ? 0.0
                            : static_cast<double>(report.total_correct) / report.total_n;
    return report;
}

std::vector<double> cumulative_accuracy(const std::vector<MatchPrediction>& records) {
    std::vector<double> series;
    series.reserve(records.size());
    int correct = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
        if (records[k].correct()) ++correct;
        series.push_back(static_cast<double>(correct) / static_cast<double>(k + 1));
    }
    return series;
}

std::optional<double> BenchmarkResult::overall_accuracy() const {
    long long scored = 0, correct = 0;
    for (const auto& [season, b] : per_season) {
        scored += b.scored;
        correct += b.correct;
    }
    if (scored == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(scored);
}

BenchmarkResult odds_benchmark(const Corpus& corpus) {
    BenchmarkResult result;
    for (auto idx : corpus.included_indices()) {
        const MatchRecord& m = corpus.matches()[idx];
        auto& season = result.per_season[m.season];
        ++season.included;
        auto it = corpus.odds().find(m.match_id);
        if (it == corpus.odds().end()) continue;
        const OddsRecord& o = it->second;
        if (o.home_odds == o.away_odds) continue;  // no strict favorite
        bool favorite_home = o.home_odds < o.away_odds;
        bool home_won = m.outcome == Outcome::home_win;
        ++season.scored;
        if (favorite_home == home_won) ++season.correct;
        result.scored_matches.push_back(m.match_id);
    }
    return result;
}

std::vector<ComparisonRow> compare(const BacktestReport& report,
                                   const BenchmarkResult& benchmark) {
    std::set<std::string> scored(benchmark.scored_matches.begin(),
                                 benchmark.scored_matches.end());

    std::map<int, ComparisonRow> rows;
    std::map<int, std::pair<int, int>> paired;  // season -> (n, correct) on scored matches
    for (const auto& rec : report.records) {
        auto& row = rows[rec.season];
        row.season = rec.season;
        ++row.n_all;
        if (rec.correct()) row.model_all += 1;
        if (scored.count(rec.match_id)) {
            auto& [n, c] = paired[rec.season];
            ++n;
            if (rec.correct()) ++c;
        }
    }
    bool overlap = false;
    for (auto& [season, row] : rows) {
        row.model_all = row.n_all == 0 ? 0.0 : row.model_all / row.n_all;
        auto pit = paired.find(season);
        if (pit != paired.end() && pit->second.first > 0) {
            row.n_paired = pit->second.first;
            row.model_paired =
                static_cast<double>(pit->second.second) / pit->second.first;
        }
        auto bit = benchmark.per_season.find(season);
        if (bit != benchmark.per_season.end()) {
            row.favorite = bit->second.accuracy();
            if (row.favorite) overlap = true;
        }
        if (row.model_paired && row.favorite) {
            row.difference = *row.model_paired - *row.favorite;
        }
    }
    if (!overlap) throw DataError("compare: no season overlaps the odds benchmark");
    std::vector<ComparisonRow> out;
    out.reserve(rows.size());
    for (auto& [season, row] : rows) out.push_back(std::move(row));
    return out;
}

void write_report_json(const std::string& path, const BacktestReport& report,
                       const std::map<std::string, std::string>& config_echo) {
    ordered_json doc;
    doc["config"] = ordered_json::object();
    for (const auto& [k, v] : config_echo) doc["config"][k] = v;
    doc["model"] = report.model_kind;
    doc["features"] = report.feature_description;
    doc["seed"] = report.seed;
    doc["window_seasons"] = report.window_seasons;
    doc["test_seasons"] = report.test_seasons;

    ordered_json per_season = ordered_json::object();
    for (const auto& [season, acc] : report.per_season) {
        per_season[std::to_string(season)] = {
            {"n", acc.n}, {"correct", acc.correct}, {"accuracy", acc.accuracy()}};
    }
    doc["per_season"] = std::move(per_season);
    doc["overall"] = {{"n", report.total_n},
                      {"correct", report.total_correct},
                      {"accuracy", report.overall_accuracy}};

    ordered_json records = ordered_json::array();
    for (const auto& r : report.records) {
        records.push_back({{"match_id", r.match_id},
                           {"season", r.season},
                           {"date", to_string(r.date)},
                           {"p_home", r.p_home},
                           {"predicted", r.predicted},
                           {"actual", r.actual}});
    }
    doc["records"] = std::move(records);

    ordered_json cumulative = ordered_json::object();
    for (const auto& [season, series] : report.cumulative) {
        cumulative[std::to_string(season)] = series;
    }
    doc["cumulative"] = std::move(cumulative);

    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

void write_report_csv(const std::string& path, const BacktestReport& report) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "match_id,season,date,p_home,predicted,actual,correct\n";
    for (const auto& r : report.records) {
        out << r.match_id << ',' << r.season << ',' << to_string(r.date) << ','
            << format_double_12(r.p_home) << ',' << r.predicted << ',' << r.actual << ','
            << (r.correct() ? 1 : 0) << '\n';
    }
}

BacktestReport read_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    ordered_json doc = ordered_json::parse(in);
    BacktestReport report;
    report.model_kind = doc.at("model").get<std::string>();
    report.feature_description = doc.at("features").get<std::string>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.window_seasons = doc.at("window_seasons").get<int>();
    report.test_seasons = doc.at("test_seasons").get<std::vector<int>>();
    for (const auto& [key, value] : doc.at("per_season").items()) {
        SeasonAccuracy acc;
        acc.n = value.at("n").get<int>();
        acc.correct = value.at("correct").get<int>();
        report.per_season[std::stoi(key)] = acc;
    }
    report.total_n = doc.at("overall").at("n").get<int>();
    report.total_correct = doc.at("overall").at("correct").get<int>();
    report.overall_accuracy = doc.at("overall").at("accuracy").get<double>();
    for (const auto& r : doc.at("records")) {
        MatchPrediction rec;
        rec.match_id = r.at("match_id").get<std::string>();
        rec.season = r.at("season").get<int>();
        rec.date = *parse_date(r.at("date").get<std::string>());
        rec.p_home = r.at("p_home").get<double>();
        rec.predicted = r.at("predicted").get<int>();
        rec.actual = r.at("actual").get<int>();
        report.records.push_back(std::move(rec));
    }
    for (const auto& [key, value] : doc.at("cumulative").items()) {
        report.cumulative[std::stoi(key)] = value.get<std::vector<double>>();
    }
    return report;
}

}  // namespace cricpred
