#include "cricpred/models.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cricpred/errors.hpp"

namespace cricpred {

using ordered_json = nlohmann::ordered_json;

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::naive_bayes: return "naive_bayes";
        case ModelKind::logistic_regression: return "logistic_regression";
        case ModelKind::random_forest: return "random_forest";
        case ModelKind::gradient_boosting: return "gradient_boosting";
    }
    return "?";
}

std::optional<ModelKind> parse_model_kind(const std::string& s) {
    if (s == "naive_bayes" || s == "nb") return ModelKind::naive_bayes;
    if (s == "logistic_regression" || s == "lr") return ModelKind::logistic_regression;
    if (s == "random_forest" || s == "rf") return ModelKind::random_forest;
    if (s == "gradient_boosting" || s == "gbt") return ModelKind::gradient_boosting;
    return std::nullopt;
}

double ModelSpec::hyper_or(const std::string& name, double fallback) const {
    auto it = hyper.find(name);
    return it == hyper.end() ? fallback : it->second;
}

void ModelSpec::validate() const {
    static const std::map<ModelKind, std::set<std::string>> allowed = {
        {ModelKind::naive_bayes, {"event_model", "bins"}},
        {ModelKind::logistic_regression, {"lambda", "max_iter", "tol"}},
        {ModelKind::random_forest,
         {"n_trees", "min_samples_leaf", "max_depth", "bootstrap", "mtry"}},
        {ModelKind::gradient_boosting,
         {"n_rounds", "learning_rate", "max_depth", "min_samples_leaf", "subsample"}},
    };
    const auto& ok = allowed.at(kind);
    for (const auto& [name, value] : hyper) {
        if (!ok.count(name)) {
            throw ConfigError("hyperparameter \"" + name + "\" is not valid for " +
                              to_string(kind));
        }
        (void)value;
    }
    if (hyper_or("lambda", 1e-4) < 0) throw ConfigError("lambda must be >= 0");
    if (hyper_or("n_trees", 200) < 1) throw ConfigError("n_trees must be >= 1");
    if (hyper_or("n_rounds", 200) < 0) throw ConfigError("n_rounds must be >= 0");
    if (hyper_or("learning_rate", 0.1) <= 0) throw ConfigError("learning_rate must be > 0");
    double sub = hyper_or("subsample", 1.0);
    if (sub <= 0 || sub > 1) throw ConfigError("subsample must be in (0, 1]");
    if (use_pca && pca.k == 0 &&
        (pca.variance_fraction <= 0 || pca.variance_fraction > 1)) {
        throw ConfigError("pca variance fraction must be in (0, 1]");
    }
}

TrainedModel fit_model(const ModelSpec& spec, const std::vector<std::string>& feature_names,
                       const Rows& X, const std::vector<int>& y) {
    spec.validate();
    if (!X.empty() && X[0].size() != feature_names.size()) {
        throw ConfigError("fit_model: feature_names do not match matrix width");
    }

    TrainedModel model;
    model.spec = spec;
    model.feature_names = feature_names;

    const Rows* design = &X;
    Rows projected;
    if (spec.use_pca) {
        model.pca = fit_pca(X, spec.pca);
        projected = model.pca->transform_rows(X);
        design = &projected;
    }

    switch (spec.kind) {
        case ModelKind::naive_bayes:
            model.params = fit_naive_bayes(*design, y, spec);
            break;
        case ModelKind::logistic_regression:
            model.params = fit_logistic_regression(*design, y, spec);
            break;
        case ModelKind::random_forest:
            model.params = fit_random_forest(*design, y, spec);
            break;
        case ModelKind::gradient_boosting:
            model.params = fit_gradient_boosting(*design, y, spec);
            break;
    }
    return model;
}

double TrainedModel::predict_proba(std::span<const double> row) const {
    if (row.size() != feature_names.size()) {
        throw ConfigError("predict: expected " + std::to_string(feature_names.size()) +
                          " features, got " + std::to_string(row.size()));
    }
    std::vector<double> projected;
    std::span<const double> input = row;
    if (pca) {
        projected = pca->transform(row);
        input = projected;
    }
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NaiveBayesParams>) return nb_predict_proba(p, input);
            if constexpr (std::is_same_v<T, LogisticParams>) return lr_predict_proba(p, input);
            if constexpr (std::is_same_v<T, ForestParams>) return forest_predict_proba(p, input);
            if constexpr (std::is_same_v<T, BoostParams>) return boost_predict_proba(p, input);
        },
        params);
}

void TrainedModel::check_features(const std::vector<std::string>& names) const {
    if (names == feature_names) return;
    std::set<std::string> have(names.begin(), names.end());
    std::set<std::string> want(feature_names.begin(), feature_names.end());
    std::ostringstream os;
    os << "feature contract mismatch;";
    bool any = false;
    for (const auto& w : feature_names) {
        if (!have.count(w)) {
            os << " missing: " << w;
            any = true;
        }
    }
    for (const auto& h : names) {
        if (!want.count(h)) {
            os << " extra: " << h;
            any = true;
        }
    }
    if (!any) os << " columns are reordered (training order required)";
    throw ConfigError(os.str());
}

double TrainedModel::predict_proba(const std::vector<std::string>& names,
                                   std::span<const double> row) const {
    check_features(names);
    return predict_proba(row);
}

namespace {

ordered_json tree_to_json(const Tree& t) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : t.nodes) {
        if (n.feature < 0) {
            nodes.push_back(ordered_json{{"value", n.value}});
        } else {
            nodes.push_back(ordered_json{{"feature", n.feature},
                                         {"threshold", n.threshold},
                                         {"left", n.left},
                                         {"right", n.right}});
        }
    }
    return nodes;
}

Tree tree_from_json(const ordered_json& nodes) {
    Tree t;
    for (const auto& n : nodes) {
        TreeNode node;
        if (n.contains("feature")) {
            node.feature = n.at("feature").get<int>();
            node.threshold = n.at("threshold").get<double>();
            node.left = n.at("left").get<int>();
            node.right = n.at("right").get<int>();
        } else {
            node.value = n.at("value").get<double>();
        }
        t.nodes.push_back(node);
    }
    return t;
}

}  // namespace

std::string model_to_json(const TrainedModel& model) {
    ordered_json doc;
    doc["kind"] = to_string(model.spec.kind);
    doc["seed"] = model.spec.seed;
    doc["hyperparameters"] = ordered_json::object();
    for (const auto& [k, v] : model.spec.hyper) doc["hyperparameters"][k] = v;
    doc["features"] = model.feature_names;

    if (model.pca) {
        ordered_json p;
        p["mode"] = model.spec.pca.k > 0 ? "components" : "variance_fraction";
        p["k"] = model.spec.pca.k;
        p["variance_fraction"] = model.spec.pca.variance_fraction;
        p["mean"] = model.pca->mean;
        p["scale"] = model.pca->scale;
        p["components"] = model.pca->components;
        p["explained_variance_fraction"] = model.pca->explained_variance_fraction;
        p["rank_deficient"] = model.pca->rank_deficient;
        doc["pca"] = std::move(p);
    }

    ordered_json params;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NaiveBayesParams>) {
                params["event_model"] = p.event_model;
                params["log_prior"] = std::vector<double>{p.log_prior[0], p.log_prior[1]};
                if (p.event_model == 0) {
                    params["mean0"] = p.mean[0];
                    params["mean1"] = p.mean[1];
                    params["var0"] = p.var[0];
                    params["var1"] = p.var[1];
                } else {
                    params["bins"] = p.bins;
                    params["boundaries"] = p.boundaries;
                    params["log_prob0"] = p.log_prob[0];
                    params["log_prob1"] = p.log_prob[1];
                }
            } else if constexpr (std::is_same_v<T, LogisticParams>) {
                params["weights"] = p.weights;
                params["intercept"] = p.intercept;
                params["converged"] = p.converged;
                params["grad_norm"] = p.grad_norm;
                params["iterations"] = p.iterations;
            } else if constexpr (std::is_same_v<T, ForestParams>) {
                ordered_json trees = ordered_json::array();
                for (const auto& t : p.trees) trees.push_back(tree_to_json(t));
                params["trees"] = std::move(trees);
            } else if constexpr (std::is_same_v<T, BoostParams>) {
                params["base_score"] = p.base_score;
                params["learning_rate"] = p.learning_rate;
                ordered_json trees = ordered_json::array();
                for (const auto& t : p.trees) trees.push_back(tree_to_json(t));
                params["trees"] = std::move(trees);
            }
        },
        model.params);
    doc["parameters"] = std::move(params);
    return doc.dump(2) + "\n";
}

TrainedModel model_from_json(const std::string& text) {
    ordered_json doc = ordered_json::parse(text);
    TrainedModel model;
    auto kind = parse_model_kind(doc.at("kind").get<std::string>());
    if (!kind) throw DataError("model file: unknown kind");
    model.spec.kind = *kind;
    model.spec.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : doc.at("hyperparameters").items()) {
        model.spec.hyper[k] = v.get<double>();
    }
    model.feature_names = doc.at("features").get<std::vector<std::string>>();

    if (doc.contains("pca")) {
        const auto& p = doc.at("pca");
        model.spec.use_pca = true;
        model.spec.pca.k = p.at("k").get<int>();
        model.spec.pca.variance_fraction = p.at("variance_fraction").get<double>();
        PcaModel pca;
        pca.mean = p.at("mean").get<std::vector<double>>();
        pca.scale = p.at("scale").get<std::vector<double>>();
        pca.components = p.at("components").get<std::vector<std::vector<double>>>();
        pca.explained_variance_fraction =
            p.at("explained_variance_fraction").get<std::vector<double>>();
        pca.rank_deficient = p.at("rank_deficient").get<bool>();
        model.pca = std::move(pca);
    }

    const auto& params = doc.at("parameters");
    switch (model.spec.kind) {
        case ModelKind::naive_bayes: {
            NaiveBayesParams p;
            p.event_model = params.at("event_model").get<int>();
            auto prior = params.at("log_prior").get<std::vector<double>>();
            p.log_prior[0] = prior[0];
            p.log_prior[1] = prior[1];
            if (p.event_model == 0) {
                p.mean[0] = params.at("mean0").get<std::vector<double>>();
                p.mean[1] = params.at("mean1").get<std::vector<double>>();
                p.var[0] = params.at("var0").get<std::vector<double>>();
                p.var[1] = params.at("var1").get<std::vector<double>>();
            } else {
                p.bins = params.at("bins").get<int>();
                p.boundaries = params.at("boundaries").get<std::vector<std::vector<double>>>();
                p.log_prob[0] = params.at("log_prob0").get<std::vector<std::vector<double>>>();
                p.log_prob[1] = params.at("log_prob1").get<std::vector<std::vector<double>>>();
            }
            model.params = std::move(p);
            break;
        }
        case ModelKind::logistic_regression: {
            LogisticParams p;
            p.weights = params.at("weights").get<std::vector<double>>();
            p.intercept = params.at("intercept").get<double>();
            p.converged = params.at("converged").get<bool>();
            p.grad_norm = params.at("grad_norm").get<double>();
            p.iterations = params.at("iterations").get<int>();
            model.params = std::move(p);
            break;
        }
        case ModelKind::random_forest: {
            ForestParams p;
            for (const auto& t : params.at("trees")) p.trees.push_back(tree_from_json(t));
            model.params = std::move(p);
            break;
        }
        case ModelKind::gradient_boosting: {
            BoostParams p;
            p.base_score = params.at("base_score").get<double>();
            p.learning_rate = params.at("learning_rate").get<double>();
            for (const auto& t : params.at("trees")) p.trees.push_back(tree_from_json(t));
            model.params = std::move(p);
            break;
        }
    }
    return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << model_to_json(model);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

}  // namespace cricpred
