#include <cmath>

#include "cricpred/errors.hpp"
#include "cricpred/models.hpp"

namespace cricpred {

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double log1pexp(double z) {
    if (z > 0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

}  // namespace

LrObjective lr_objective(const Rows& X, const std::vector<int>& y, std::span<const double> w,
                         double b, double lambda) {
    std::size_t n = X.size();
    std::size_t d = w.size();
    LrObjective obj;
    obj.grad.assign(d + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double z = b;
        for (std::size_t j = 0; j < d; ++j) z += w[j] * X[i][j];
        // loss_i = log(1 + e^z) - y z
        obj.value += log1pexp(z) - static_cast<double>(y[i]) * z;
        double resid = sigmoid(z) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < d; ++j) obj.grad[j] += resid * X[i][j];
        obj.grad[d] += resid;
    }
    double inv_n = 1.0 / static_cast<double>(n);
    obj.value *= inv_n;
    for (auto& g : obj.grad) g *= inv_n;
    for (std::size_t j = 0; j < d; ++j) {
        obj.value += 0.5 * lambda * w[j] * w[j];
        obj.grad[j] += lambda * w[j];
    }
    return obj;
}

LogisticParams fit_logistic_regression(const Rows& X, const std::vector<int>& y,
                                       const ModelSpec& spec,
                                       std::vector<double>* objective_trace) {
    std::size_t n = X.size();
    if (n == 0 || y.size() != n) throw ConfigError("fit_logistic_regression: bad shapes");
    std::size_t d = X[0].size();
    long long n1 = 0;
    for (int v : y) n1 += v;
    if (n1 == 0 || n1 == static_cast<long long>(n)) {
        throw ConfigError("fit_logistic_regression: training set has a single class");
    }

    double lambda = spec.hyper_or("lambda", 1e-4);
    int max_iter = static_cast<int>(spec.hyper_or("max_iter", 10000));
    double tol = spec.hyper_or("tol", 1e-8);

    // Standardize internally; coefficients are mapped back at the end.
    std::vector<double> mean(d, 0.0), scale(d, 1.0);
    for (const auto& row : X) {
        for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
    }
    for (auto& m : mean) m /= static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0;
        for (const auto& row : X) {
            double diff = row[j] - mean[j];
            s += diff * diff;
        }
        s /= static_cast<double>(n);
        scale[j] = s > 0 ? std::sqrt(s) : 1.0;
    }
    Rows Z(n, std::vector<double>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) Z[i][j] = (X[i][j] - mean[j]) / scale[j];
    }

    std::vector<double> theta(d + 1, 0.0);  // weights then intercept
    auto eval = [&](const std::vector<double>& t) {
        return lr_objective(Z, y, std::span<const double>(t.data(), d), t[d], lambda);
    };

    LrObjective cur = eval(theta);
    if (objective_trace) objective_trace->push_back(cur.value);
    double step = 1.0;
    int iter = 0;
    double max_grad = 0;
    for (iter = 0; iter < max_iter; ++iter) {
        max_grad = 0;
        for (double g : cur.grad) max_grad = std::max(max_grad, std::fabs(g));
        if (max_grad < tol) break;

        double g2 = 0;
        for (double g : cur.grad) g2 += g * g;

        // Backtracking line search with Armijo decrease.
        step *= 2.0;
        bool accepted = false;
        std::vector<double> cand(d + 1);
        for (int half = 0; half < 60; ++half) {
            for (std::size_t j = 0; j <= d; ++j) cand[j] = theta[j] - step * cur.grad[j];
            LrObjective next = eval(cand);
            if (next.value <= cur.value - 0.5 * step * g2) {
                theta = cand;
                cur = std::move(next);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // step underflow; gradient norm reported as-is
        if (objective_trace) objective_trace->push_back(cur.value);
    }

    LogisticParams p;
    p.iterations = iter;
    p.grad_norm = max_grad;
    p.converged = max_grad < tol;
    p.weights.resize(d);
    p.intercept = theta[d];
    for (std::size_t j = 0; j < d; ++j) {
        p.weights[j] = theta[j] / scale[j];
        p.intercept -= theta[j] * mean[j] / scale[j];
    }
    return p;
}

double lr_predict_proba(const LogisticParams& p, std::span<const double> row) {
    double z = p.intercept;
    for (std::size_t j = 0; j < row.size(); ++j) z += p.weights[j] * row[j];
    return sigmoid(z);
}

}  // namespace cricpred
