#include "doctest.h"

#include <cmath>
#include <map>
#include <random>

#include "cricpred/stats.hpp"

using namespace cricpred;

namespace {

// Independent long-double Pearson for oracle comparisons.
long double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    long double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    long double n = static_cast<long double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    long double mx = sx / n, my = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// MI via H(X) + H(Y) - H(X,Y), a different route than the implementation.
long double mi_oracle(const std::vector<int>& xb, const std::vector<int>& yb) {
    auto entropy = [](const std::map<long long, long long>& counts, long double n) {
        long double h = 0;
        for (const auto& [k, c] : counts) {
            if (c == 0) continue;
            long double p = static_cast<long double>(c) / n;
            h -= p * std::log2(p);
        }
        return h;
    };
    std::map<long long, long long> cx, cy, cxy;
    for (std::size_t i = 0; i < xb.size(); ++i) {
        ++cx[xb[i]];
        ++cy[yb[i]];
        ++cxy[static_cast<long long>(xb[i]) * 1000003 + yb[i]];
    }
    long double n = static_cast<long double>(xb.size());
    return entropy(cx, n) + entropy(cy, n) - entropy(cxy, n);
}

// Upper-tail chi-square p for df in {1..10} via the halving recurrence
// Q(a+1,x) = Q(a,x) + x^a e^-x / Gamma(a+1), anchored at erfc / exp.
long double chi2_p_oracle(int df, long double x2) {
    long double x = x2 / 2.0L;
    long double a = df % 2 == 1 ? 0.5L : 1.0L;
    long double q = df % 2 == 1 ? std::erfc(std::sqrt(x)) : std::exp(-x);
    while (a + 0.5L <= df / 2.0L + 0.25L) {
        q += std::pow(x, a) * std::exp(-x) / std::tgamma(a + 1.0L);
        a += 1.0L;
    }
    return q;
}

}  // namespace

TEST_SUITE("select") {

TEST_CASE("pearson identities") {
    std::vector<double> y = {1, 0, 1, 1, 0, 0, 1, 0};
    auto r = pearson(y, y);
    REQUIRE(r);
    CHECK(*r == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> neg;
    for (double v : y) neg.push_back(1.0 - v);
    auto rn = pearson(neg, y);
    REQUIRE(rn);
    CHECK(*rn == doctest::Approx(-1.0).epsilon(1e-12));

    std::vector<double> constant(8, 3.0);
    CHECK_FALSE(pearson(constant, y).has_value());  // undefined, not silently 0
}

TEST_CASE("independent samples correlate near zero") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0, 1);
    std::size_t n = 10000;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = u(rng);
        y[i] = u(rng) < 0.5 ? 0.0 : 1.0;
    }
    auto r = pearson(x, y);
    REQUIRE(r);
    CHECK(std::fabs(*r) < 0.05);
    CHECK(*r == doctest::Approx(static_cast<double>(pearson_oracle(x, y))).epsilon(1e-12));
}

TEST_CASE("pearson matches the direct formula within 1e-12") {
    std::mt19937_64 rng(777);
    std::normal_distribution<double> g(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 10 + static_cast<std::size_t>(trial) * 7;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = g(rng);
            y[i] = g(rng) > 0 ? 1.0 : 0.0;
        }
        auto r = pearson(x, y);
        REQUIRE(r);
        CHECK(std::fabs(*r - static_cast<double>(pearson_oracle(x, y))) < 1e-12);
    }
}

TEST_CASE("pearson is affine invariant and sign flips") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0, 1);
    std::vector<double> x(50), y(50);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng) > 0 ? 1 : 0;
    auto base = pearson(x, y);
    REQUIRE(base);
    std::vector<double> scaled, flipped;
    for (double v : x) {
        scaled.push_back(3.5 * v + 11.0);
        flipped.push_back(-2.0 * v);
    }
    CHECK(*pearson(scaled, y) == doctest::Approx(*base).epsilon(1e-12));
    CHECK(*pearson(flipped, y) == doctest::Approx(-*base).epsilon(1e-12));
}

TEST_CASE("bucketize splits evenly and keeps ties in the lower bin") {
    std::vector<double> x;
    for (int i = 0; i < 100; ++i) x.push_back(i * 1.0);
    Buckets b = bucketize(x, 5);
    CHECK_FALSE(b.degenerate);
    CHECK(b.n_bins == 5);
    std::map<int, int> sizes;
    for (int v : b.bin) ++sizes[v];
    for (const auto& [bin, count] : sizes) CHECK(count == 20);

    std::vector<double> small = {1, 2, 3, 4};
    Buckets b2 = bucketize(small, 2);
    CHECK(b2.bin == std::vector<int>{0, 0, 1, 1});

    std::vector<double> constant(10, 5.0);
    Buckets b3 = bucketize(constant, 3);
    CHECK(b3.degenerate);
    for (int v : b3.bin) CHECK(v == 0);

    // A run of equals straddling a boundary collapses to the lower bin.
    std::vector<double> tied = {1, 2, 2, 2, 3, 4};
    Buckets b4 = bucketize(tied, 3);
    CHECK(b4.bin[1] == b4.bin[2]);
    CHECK(b4.bin[2] == b4.bin[3]);
    CHECK(b4.bin[1] == 0);
}

TEST_CASE("mutual information on identical balanced vectors is 1 bit") {
    std::vector<int> y = {0, 1, 0, 1, 0, 1, 0, 1};
    CHECK(mutual_information(y, y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("independence gives exactly zero mutual information") {
    // Joint counts equal the product of margins.
    std::vector<int> x, y;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int k = 0; k < (a + 1) * (b + 1); ++k) {
                x.push_back(a);
                y.push_back(b);
            }
        }
    }
    CHECK(mutual_information(x, y) == 0.0);
}

TEST_CASE("mutual information is nonnegative and permutation invariant") {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> xv(0, 4);
    std::uniform_int_distribution<int> yv(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 40 + static_cast<std::size_t>(trial);
        std::vector<int> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = xv(rng);
            y[i] = yv(rng);
        }
        double mi = mutual_information(x, y);
        CHECK(mi >= 0.0);
        CHECK(mi == doctest::Approx(static_cast<double>(mi_oracle(x, y))).epsilon(1e-10));

        // Relabel buckets: x -> (x * 7 + 3) % 11 is injective on 0..4... not
        // generally; use a fixed permutation instead.
        std::vector<int> perm = {4, 2, 0, 3, 1};
        std::vector<int> xp(n);
        for (std::size_t i = 0; i < n; ++i) xp[i] = perm[static_cast<std::size_t>(x[i])];
        CHECK(mutual_information(xp, y) == doctest::Approx(mi).epsilon(1e-12));
    }
}

TEST_CASE("chi-square against hand-computed table") {
    // [[30,10],[10,30]]: all expected counts 20, statistic 4 * 100/20 = 20.
    std::vector<int> x, y;
    auto add = [&](int xv, int yv, int count) {
        for (int i = 0; i < count; ++i) {
            x.push_back(xv);
            y.push_back(yv);
        }
    };
    add(0, 0, 30);
    add(0, 1, 10);
    add(1, 0, 10);
    add(1, 1, 30);
    auto r = chi_square(x, y);
    REQUIRE(r);
    CHECK(r->statistic == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(r->dof == 1);
    CHECK(r->p_value == doctest::Approx(7.744216431044074e-06).epsilon(1e-9));
    CHECK(std::fabs(r->p_value - static_cast<double>(chi2_p_oracle(1, 20.0L))) < 1e-12);
}

TEST_CASE("independent margins give statistic 0 and p 1") {
    std::vector<int> x, y;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int k = 0; k < 25; ++k) {
                x.push_back(a);
                y.push_back(b);
            }
        }
    }
    auto r = chi_square(x, y);
    REQUIRE(r);
    CHECK(r->statistic == doctest::Approx(0.0));
    CHECK(r->p_value == doctest::Approx(1.0));
}

TEST_CASE("degenerate tables are undefined, not zero") {
    std::vector<int> x(20, 1);  // single row
    std::vector<int> y;
    for (int i = 0; i < 20; ++i) y.push_back(i % 2);
    CHECK_FALSE(chi_square(x, y).has_value());

    std::vector<int> x2 = {0, 1, 0, 1};
    std::vector<int> y2(4, 1);  // single outcome column
    CHECK_FALSE(chi_square(x2, y2).has_value());
}

TEST_CASE("chi-square matches the brute-force oracle on random K x 2 tables") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 2 + trial % 5;  // up to 6 buckets
        std::uniform_int_distribution<int> xv(0, k - 1);
        std::uniform_int_distribution<int> yv(0, 1);
        std::size_t n = 60 + static_cast<std::size_t>(trial * 3);
        std::vector<int> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = xv(rng);
            y[i] = yv(rng);
        }
        auto r = chi_square(x, y);
        if (!r) continue;  // degenerate random draw

        // Independent statistic computation in long double.
        std::map<int, long long> rx;
        std::map<int, long long> ry;
        std::map<std::pair<int, int>, long long> rc;
        for (std::size_t i = 0; i < n; ++i) {
            ++rx[x[i]];
            ++ry[y[i]];
            ++rc[{x[i], y[i]}];
        }
        long double stat = 0;
        for (const auto& [xv2, cx] : rx) {
            for (const auto& [yv2, cy] : ry) {
                long double expected =
                    static_cast<long double>(cx) * cy / static_cast<long double>(n);
                long double observed = 0;
                auto it = rc.find({xv2, yv2});
                if (it != rc.end()) observed = static_cast<long double>(it->second);
                stat += (observed - expected) * (observed - expected) / expected;
            }
        }
        int dof = static_cast<int>(rx.size()) - 1;
        CHECK(std::fabs(r->statistic - static_cast<double>(stat)) < 1e-10);
        CHECK(r->dof == dof);
        CHECK(std::fabs(r->p_value - static_cast<double>(chi2_p_oracle(dof, stat))) < 1e-10);
    }
}

TEST_CASE("chi-square is invariant under bucket relabeling") {
    std::vector<int> x = {0, 0, 1, 1, 2, 2, 0, 1, 2, 2, 1, 0, 0, 2, 1, 1};
    std::vector<int> y = {0, 1, 0, 1, 0, 1, 0, 0, 1, 1, 1, 0, 1, 0, 0, 1};
    auto base = chi_square(x, y);
    REQUIRE(base);
    std::vector<int> relabeled;
    int map[3] = {7, 1, 4};
    for (int v : x) relabeled.push_back(map[v]);
    auto r = chi_square(relabeled, y);
    REQUIRE(r);
    CHECK(r->statistic == doctest::Approx(base->statistic).epsilon(1e-12));
    CHECK(r->p_value == doctest::Approx(base->p_value).epsilon(1e-12));
}

TEST_CASE("regularized gamma agrees with closed forms") {
    // Q(1, x) = exp(-x); Q(1/2, x) = erfc(sqrt(x)).
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0}) {
        CHECK(std::fabs(regularized_gamma_q(1.0, x) - std::exp(-x)) < 1e-12);
        CHECK(std::fabs(regularized_gamma_q(0.5, x) - std::erfc(std::sqrt(x))) < 1e-12);
        CHECK(regularized_gamma_p(1.0, x) + regularized_gamma_q(1.0, x) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(regularized_gamma_q(2.5, 0.0) == 1.0);
}

TEST_CASE("score_by_year needs two seasons and recomputes mean exactly") {
    FeatureMatrix m;
    m.columns = {"f"};
    auto add_row = [&](int season, double x, int label) {
        m.match_ids.push_back("m" + std::to_string(m.match_ids.size()));
        m.seasons.push_back(season);
        m.dates.push_back(Date{season, 6, 1});
        m.labels.push_back(label);
        m.rows.push_back({x});
    };
    for (int i = 0; i < 12; ++i) add_row(2010, i, i % 2);
    CHECK_THROWS_AS(score_by_year(m, ScoreMetric::pearson), ConfigError);

    // Feature equals the label in 2010 and its negation in 2011.
    FeatureMatrix m2;
    m2.columns = {"f"};
    auto add2 = [&](int season, double x, int label) {
        m2.match_ids.push_back("m" + std::to_string(m2.match_ids.size()));
        m2.seasons.push_back(season);
        m2.dates.push_back(Date{season, 6, 1});
        m2.labels.push_back(label);
        m2.rows.push_back({x});
    };
    for (int i = 0; i < 12; ++i) add2(2010, i % 2, i % 2);
    for (int i = 0; i < 12; ++i) add2(2011, 1 - i % 2, i % 2);
    auto scores = score_by_year(m2, ScoreMetric::pearson);
    REQUIRE(scores.size() == 1);
    const auto& s = scores[0];
    REQUIRE(s.per_year.at(2010));
    REQUIRE(s.per_year.at(2011));
    CHECK(*s.per_year.at(2010) == doctest::Approx(1.0));
    CHECK(*s.per_year.at(2011) == doctest::Approx(-1.0));
    CHECK(s.mean == doctest::Approx(0.0));
    CHECK(s.variance == doctest::Approx(1.0));  // population variance

    // Mean recomputes exactly from the per-year map.
    double sum = 0;
    int cnt = 0;
    for (const auto& [year, v] : s.per_year) {
        if (v) {
            sum += *v;
            ++cnt;
        }
    }
    CHECK(s.mean == sum / cnt);
}

TEST_CASE("feature identical to the label scores 1.0 with zero variance") {
    FeatureMatrix m;
    m.columns = {"f"};
    for (int season : {2010, 2011, 2012}) {
        for (int i = 0; i < 10; ++i) {
            m.match_ids.push_back("m" + std::to_string(m.match_ids.size()));
            m.seasons.push_back(season);
            m.dates.push_back(Date{season, 6, 1});
            m.labels.push_back(i % 2);
            m.rows.push_back({static_cast<double>(i % 2)});
        }
    }
    auto scores = score_by_year(m, ScoreMetric::pearson);
    CHECK(scores[0].mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scores[0].variance == doctest::Approx(0.0));

    auto mi_scores = score_by_year(m, ScoreMetric::mutual_information, 2);
    CHECK(mi_scores[0].mean == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("undefined within-season scores are excluded from the moments") {
    FeatureMatrix m;
    m.columns = {"f"};
    auto add_row = [&](int season, double x, int label) {
        m.match_ids.push_back("m" + std::to_string(m.match_ids.size()));
        m.seasons.push_back(season);
        m.dates.push_back(Date{season, 6, 1});
        m.labels.push_back(label);
        m.rows.push_back({x});
    };
    for (int i = 0; i < 8; ++i) add_row(2010, 5.0, i % 2);       // constant -> undefined
    for (int i = 0; i < 8; ++i) add_row(2011, i % 2, i % 2);     // perfect
    auto scores = score_by_year(m, ScoreMetric::pearson);
    CHECK_FALSE(scores[0].per_year.at(2010).has_value());
    CHECK(scores[0].defined_years == 1);
    CHECK(scores[0].mean == doctest::Approx(1.0));
}

}  // TEST_SUITE
