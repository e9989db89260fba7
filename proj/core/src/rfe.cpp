#include "cricpred/rfe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cricpred/stats.hpp"

namespace cricpred {

double loso_accuracy(const FeatureMatrix& matrix, const ModelSpec& spec,
                     const std::vector<std::string>& columns) {
    FeatureMatrix sub = matrix.select_columns(columns);
    auto seasons = sub.distinct_seasons();
    if (seasons.size() < 2) {
        throw ConfigError("loso_accuracy: need at least 2 seasons");
    }
    long long correct = 0, total = 0;
    for (int held_out : seasons) {
        Rows train_x, test_x;
        std::vector<int> train_y, test_y;
        for (std::size_t i = 0; i < sub.n_rows(); ++i) {
            if (sub.seasons[i] == held_out) {
                test_x.push_back(sub.rows[i]);
                test_y.push_back(sub.labels[i]);
            } else {
                train_x.push_back(sub.rows[i]);
                train_y.push_back(sub.labels[i]);
            }
        }
        TrainedModel model;
        try {
            model = fit_model(spec, columns, train_x, train_y);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("loso_accuracy: training failed holding out season ") +
                              std::to_string(held_out) + ": " + e.what());
        }
        for (std::size_t i = 0; i < test_x.size(); ++i) {
            if (model.predict(test_x[i]) == test_y[i]) ++correct;
            ++total;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

RfeTrace rfe(const FeatureMatrix& matrix, const ModelSpec& spec) {
    if (matrix.n_cols() < 2) throw ConfigError("rfe: need at least 2 features");

    // |pearson| against the label, for elimination tie-breaks.
    std::vector<double> label(matrix.labels.begin(), matrix.labels.end());
    std::map<std::string, double> abs_pearson;
    for (const auto& name : matrix.columns) {
        auto r = pearson(matrix.column(name), label);
        abs_pearson[name] = r ? std::fabs(*r) : 0.0;
    }

    RfeTrace trace;
    std::vector<std::string> current = matrix.columns;
    trace.sizes.push_back(static_cast<int>(current.size()));
    trace.accuracy_at_size.push_back(loso_accuracy(matrix, spec, current));

    while (current.size() > 1) {
        std::string best_feature;
        double best_acc = -1;
        for (const auto& candidate : current) {
            std::vector<std::string> without;
            without.reserve(current.size() - 1);
            for (const auto& c : current) {
                if (c != candidate) without.push_back(c);
            }
            double acc = loso_accuracy(matrix, spec, without);
            bool better = acc > best_acc;
            if (acc == best_acc) {
                double cand_r = abs_pearson.at(candidate);
                double best_r = abs_pearson.at(best_feature);
                better = cand_r < best_r || (cand_r == best_r && candidate < best_feature);
            }
            if (better) {
                best_acc = acc;
                best_feature = candidate;
            }
        }
        std::erase(current, best_feature);
        trace.eliminated.push_back(best_feature);
        trace.sizes.push_back(static_cast<int>(current.size()));
        trace.accuracy_at_size.push_back(best_acc);
    }

    // Accuracy argmax over the trace; equal accuracy prefers the smaller
    // subset, which appears later in the trace.
    std::size_t best = 0;
    for (std::size_t i = 1; i < trace.accuracy_at_size.size(); ++i) {
        if (trace.accuracy_at_size[i] >= trace.accuracy_at_size[best]) best = i;
    }
    std::vector<std::string> selected = matrix.columns;
    for (std::size_t i = 0; i < best; ++i) std::erase(selected, trace.eliminated[i]);
    trace.selected = std::move(selected);
    return trace;
}

void write_rfe_trace(const std::string& path, const RfeTrace& trace, const ModelSpec& spec) {
    nlohmann::ordered_json doc;
    doc["model"] = to_string(spec.kind);
    doc["seed"] = spec.seed;
    doc["protocol"] = "leave-one-season-out accuracy";
    doc["sizes"] = trace.sizes;
    doc["accuracy_at_size"] = trace.accuracy_at_size;
    doc["eliminated"] = trace.eliminated;
    doc["selected"] = trace.selected;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace cricpred
