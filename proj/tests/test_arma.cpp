#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "cyclecast/arma.hpp"

using namespace cyclecast;

namespace {

ResidualSeries series(std::vector<double> v) { return ResidualSeries{std::move(v), 1}; }

ArmaModel manual_model(std::vector<double> phi, std::vector<double> theta, double sigma2) {
    ArmaModel m;
    m.spec = {phi.size(), theta.size()};
    m.phi = std::move(phi);
    m.theta = std::move(theta);
    m.sigma2 = sigma2;
    m.converged = true;
    return m;
}

// independent stationarity oracle: eigenvalues of the AR companion matrix
bool stationary_by_companion(const std::vector<double>& phi) {
    std::size_t p = phi.size();
    if (p == 0) return true;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                              static_cast<Eigen::Index>(p));
    for (std::size_t j = 0; j < p; ++j) C(0, static_cast<Eigen::Index>(j)) = phi[j];
    for (std::size_t j = 1; j < p; ++j)
        C(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j - 1)) = 1.0;
    for (auto ev : C.eigenvalues()) {
        if (std::abs(ev) >= 1.0 - 1e-8) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("AR(1) parameter recovery on a long simulated path") {
    std::vector<double> x = simulate_arma(std::vector<double>{0.5}, {}, 1.0, 10000, 42);
    ArmaModel m = fit_arma(series(x), {1, 0});
    CHECK(m.converged);
    CHECK(m.phi[0] > 0.47);
    CHECK(m.phi[0] < 0.53);
    CHECK(m.sigma2 > 0.95);
    CHECK(m.sigma2 < 1.05);
}

TEST_CASE("white noise fit as AR(1) gives a near-zero coefficient") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> x(5000);
    for (auto& v : x) v = dist(rng);
    ArmaModel m = fit_arma(series(x), {1, 0});
    CHECK(std::abs(m.phi[0]) < 0.05);
}

TEST_CASE("fitted polynomials are stationary and invertible") {
    std::mt19937_64 rng(2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::vector<double> x =
            simulate_arma(std::vector<double>{0.6, -0.3}, std::vector<double>{0.4}, 1.0, 800, seed);
        ArmaModel m = fit_arma(series(x), {2, 1});
        CHECK(stationary_by_companion(m.phi));
        CHECK(stationary_by_companion(m.theta));  // invertibility: same root condition
        CHECK(is_stationary(m.phi));
    }
}

TEST_CASE("fit needs more observations than parameters") {
    std::vector<double> x{1.0, -1.0, 0.5};
    CHECK_THROWS(fit_arma(series(x), {2, 2}));
}

TEST_CASE("information criteria are ordered aic < hmean < bic for n > e^2") {
    std::vector<double> x = simulate_arma(std::vector<double>{0.5}, {}, 1.0, 500, 3);
    ArmaModel m = fit_arma(series(x), {1, 0});
    InformationCriteria ic = information_criteria(m);
    CHECK(ic.aic_n < ic.hmean_n);
    CHECK(ic.hmean_n < ic.bic_n);
    // harmonic mean identity
    double hm = 2.0 / (1.0 / ic.aic_n + 1.0 / ic.bic_n);
    CHECK(ic.hmean_n == doctest::Approx(hm).epsilon(1e-12));
}

TEST_CASE("criteria on an unconverged model are an error") {
    ArmaModel m = manual_model({0.5}, {}, 1.0);
    m.n = 100;
    m.loglik = -140.0;
    m.converged = false;
    CHECK_THROWS(information_criteria(m));
}

TEST_CASE("profiled likelihood matches a brute-force Gaussian evaluation") {
    // AR(1) exact likelihood has a closed form; compare on a tiny series
    std::vector<double> x{1.0, 0.5, -0.3, 0.8, -0.1};
    double phi = 0.4;
    LikelihoodResult got = arma_loglik(x, std::vector<double>{phi}, {});

    // brute force: covariance of AR(1) with unit innovation variance, then
    // profile sigma2 out of the multivariate normal
    std::size_t n = x.size();
    Eigen::MatrixXd S(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::pow(phi, std::abs(static_cast<double>(i) - static_cast<double>(j))) /
                (1.0 - phi * phi);
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n));
    double quad = v.transpose() * S.llt().solve(v);
    double logdet = std::log(S.llt().matrixL().determinant()) * 2.0;
    double s2 = quad / static_cast<double>(n);
    double ll = -0.5 * static_cast<double>(n) * (std::log(2.0 * 3.14159265358979323846) + 1.0 +
                                                 std::log(s2)) -
                0.5 * logdet;
    CHECK(got.loglik == doctest::Approx(ll).epsilon(1e-9));
    CHECK(got.sigma2 == doctest::Approx(s2).epsilon(1e-9));
}

TEST_CASE("in-sample predictions for AR(1) follow the recursion") {
    ArmaModel m = manual_model({0.5}, {}, 1.0);
    std::vector<double> preds = predict_in_sample(m, series({2, 4, 4}));
    REQUIRE(preds.size() == 3);
    CHECK(preds[0] == doctest::Approx(0.0));
    CHECK(preds[1] == doctest::Approx(1.0));
    CHECK(preds[2] == doctest::Approx(2.0));
}

TEST_CASE("pure AR in-sample predictions match the closed form at every step") {
    std::vector<double> x = simulate_arma(std::vector<double>{0.6, -0.2}, {}, 1.0, 200, 5);
    ArmaModel m = manual_model({0.6, -0.2}, {}, 1.0);
    std::vector<double> preds = predict_in_sample(m, series(x));
    for (std::size_t t = 2; t < x.size(); ++t)
        CHECK(preds[t] == doctest::Approx(0.6 * x[t - 1] - 0.2 * x[t - 2]).epsilon(1e-6));
}

TEST_CASE("MA(1) predictions shrink toward zero and stay bounded") {
    std::vector<double> x = simulate_arma({}, std::vector<double>{0.7}, 1.0, 500, 6);
    ArmaModel m = manual_model({}, {0.7}, 1.0);
    std::vector<double> preds = predict_in_sample(m, series(x));
    double pred_var = 0, data_var = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        pred_var += preds[i] * preds[i];
        data_var += x[i] * x[i];
    }
    // prediction variance of an MA(1) is at most theta^2 sigma^2
    CHECK(pred_var / static_cast<double>(x.size()) < 0.7 * 0.7 * 1.0 * 1.2);
    CHECK(pred_var < data_var);
}

TEST_CASE("rolling forecasts use each observed test value in turn") {
    ArmaModel m = manual_model({0.5}, {}, 1.0);
    // long constant-ish train tail so the filter is effectively in steady state
    std::vector<double> train(200, 0.0);
    train.back() = 10.0;
    std::vector<double> test{6.0, 8.0};
    std::vector<double> f = forecast_rolling(m, series(train), test);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(f[1] == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("a zero model forecasts zero everywhere") {
    ArmaModel m = manual_model({}, {}, 1.0);
    std::vector<double> train(50, 1.0);
    std::vector<double> test{4.0, -2.0, 9.0};
    for (double v : forecast_rolling(m, series(train), test)) CHECK(v == doctest::Approx(0.0));
    for (double v : forecast_multistep(m, series(train), 5)) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("multi-step AR(1) forecasts decay geometrically") {
    ArmaModel m = manual_model({0.5}, {}, 1.0);
    std::vector<double> train(300, 0.0);
    train.back() = 8.0;
    std::vector<double> f = forecast_multistep(m, series(train), 4);
    CHECK(f[0] == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(f[1] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(f[2] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(f[3] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("level shift is the mean prediction error") {
    std::vector<double> pred{10, 20, 30};
    std::vector<double> actual{13, 25, 29};
    LevelAdjustment adj = optimize_level_shift(pred, actual);
    CHECK(adj.constant == doctest::Approx((3.0 + 5.0 - 1.0) / 3.0).epsilon(1e-12));
    CHECK(adj.rmse_after <= adj.rmse_before);
}

TEST_CASE("no shift beats the optimal one") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> pred(100), actual(100);
    for (std::size_t i = 0; i < 100; ++i) {
        pred[i] = dist(rng);
        actual[i] = pred[i] + 3.0 + dist(rng);
    }
    LevelAdjustment adj = optimize_level_shift(pred, actual);
    auto rmse_with = [&](double c) {
        double ss = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            double e = actual[i] - (pred[i] + c);
            ss += e * e;
        }
        return std::sqrt(ss / static_cast<double>(pred.size()));
    };
    for (double delta : {-1.0, -0.1, 0.1, 1.0})
        CHECK(adj.rmse_after <= rmse_with(adj.constant + delta) + 1e-12);
}

TEST_CASE("grid search finds a competitive order on simulated AR(2)") {
    std::vector<double> x = simulate_arma(std::vector<double>{0.75, -0.5}, {}, 1.0, 1500, 10);
    GridResult g = grid_search(series(x), 3, 3);
    REQUIRE(g.cells.size() == 9);
    for (const auto& c : g.cells) CHECK(c.ok);
    // the hmean pick must be within 2% of the best achievable hmean
    double best = 1e300;
    for (const auto& c : g.cells) best = std::min(best, c.criteria.hmean_n);
    CHECK(g.at(g.best_by_hmean.p, g.best_by_hmean.q).criteria.hmean_n <=
          doctest::Approx(best).epsilon(1e-12));
    CHECK(g.best_by_hmean.p >= 1);
}

TEST_CASE("grid on white noise has a flat criterion surface") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> x(800);
    for (auto& v : x) v = dist(rng);
    GridResult g = grid_search(series(x), 2, 2);
    double lo = 1e300, hi = -1e300;
    for (const auto& c : g.cells) {
        REQUIRE(c.ok);
        lo = std::min(lo, c.criteria.aic_n);
        hi = std::max(hi, c.criteria.aic_n);
    }
    CHECK(hi - lo < 0.05);
}

TEST_CASE("likelihood rarely decreases when the model nests a smaller one") {
    std::vector<double> x =
        simulate_arma(std::vector<double>{0.5, -0.2}, std::vector<double>{0.3}, 1.0, 500, 14);
    GridResult g = grid_search(series(x), 5, 5);
    std::size_t comparisons = 0, violations = 0;
    for (std::size_t p = 1; p <= 5; ++p)
        for (std::size_t q = 1; q <= 5; ++q) {
            if (!g.at(p, q).ok) continue;
            auto check_nested = [&](std::size_t np, std::size_t nq) {
                if (np < 1 || nq < 1 || !g.at(np, nq).ok) return;
                ++comparisons;
                if (g.at(p, q).loglik < g.at(np, nq).loglik - 1e-6) ++violations;
            };
            check_nested(p - 1, q);
            check_nested(p, q - 1);
        }
    REQUIRE(comparisons > 0);
    CHECK(static_cast<double>(violations) <= 0.10 * static_cast<double>(comparisons));
}

TEST_CASE("grid search is deterministic") {
    std::vector<double> x = simulate_arma(std::vector<double>{0.4}, {}, 1.0, 400, 20);
    GridResult a = grid_search(series(x), 2, 2);
    GridResult b = grid_search(series(x), 2, 2);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].loglik == b.cells[i].loglik);  // bit identical
        CHECK(a.cells[i].criteria.hmean_n == b.cells[i].criteria.hmean_n);
    }
    CHECK(a.best_by_aic == b.best_by_aic);
    CHECK(a.best_by_hmean == b.best_by_hmean);
}
