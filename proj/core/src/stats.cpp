#include "cyclecast/stats.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cyclecast {

namespace {

TrendModel ols_line(std::span<const double> y, std::int64_t origin_index) {
    std::size_t n = y.size();
    if (n < 3) throw std::invalid_argument("trend fit needs at least 3 observations");
    double nn = static_cast<double>(n);
    double t0 = static_cast<double>(origin_index);
    double sum_t = 0, sum_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_t += t0 + static_cast<double>(i);
        sum_y += y[i];
    }
    double tbar = sum_t / nn;
    double ybar = sum_y / nn;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dt = t0 + static_cast<double>(i) - tbar;
        sxx += dt * dt;
        sxy += dt * (y[i] - ybar);
    }
    TrendModel m;
    m.n = n;
    m.slope = sxy / sxx;
    m.intercept = ybar - m.slope * tbar;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = t0 + static_cast<double>(i);
        double e = y[i] - (m.intercept + m.slope * t);
        rss += e * e;
    }
    double s2 = rss / (nn - 2.0);
    m.slope_se = std::sqrt(s2 / sxx);
    // Var(intercept) = s^2 * (1/n + tbar^2 / sxx)
    m.intercept_se = std::sqrt(s2 * (1.0 / nn + tbar * tbar / sxx));
    m.slope_t = m.slope / m.slope_se;
    m.intercept_t = m.intercept / m.intercept_se;
    return m;
}

}  // namespace

TrendModel fit_linear_trend(const DailySeries& series) {
    std::vector<double> y(series.counts.begin(), series.counts.end());
    return ols_line(y, 1);
}

TrendModel fit_linear_trend(std::span<const double> values, std::int64_t origin_index) {
    return ols_line(values, origin_index);
}

ResidualSeries detrend(const DailySeries& series, const TrendModel& trend) {
    ResidualSeries out;
    out.origin_index = 1;
    out.values.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        out.values.push_back(static_cast<double>(series.counts[i]) -
                             trend.at(static_cast<double>(i + 1)));
    return out;
}

ResidualSeries detrend(const ResidualSeries& x, const TrendModel& trend) {
    ResidualSeries out;
    out.origin_index = x.origin_index;
    out.values.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.values.push_back(x.values[i] -
                             trend.at(static_cast<double>(x.origin_index) +
                                      static_cast<double>(i)));
    return out;
}

CorrelogramResult acf(std::span<const double> x, std::size_t max_lag) {
    std::size_t n = x.size();
    if (max_lag >= n) throw std::invalid_argument("max_lag must be below the series length");
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double denom = 0;
    for (double v : x) denom += (v - mean) * (v - mean);
    if (denom <= 0) throw std::invalid_argument("zero-variance series has no autocorrelation");
    CorrelogramResult out;
    out.values.resize(max_lag + 1);
    for (std::size_t h = 0; h <= max_lag; ++h) {
        double num = 0;
        for (std::size_t t = 0; t + h < n; ++t) num += (x[t] - mean) * (x[t + h] - mean);
        out.values[h] = num / denom;
    }
    return out;
}

CorrelogramResult acf(const ResidualSeries& x, std::size_t max_lag) {
    return acf(std::span<const double>(x.values), max_lag);
}

std::vector<double> durbin_levinson_pacf(std::span<const double> rho) {
    if (rho.empty() || rho[0] != 1.0)
        throw std::invalid_argument("autocorrelation sequence must start with rho[0] = 1");
    std::size_t m = rho.size() - 1;
    std::vector<double> pac(m + 1, 1.0);
    std::vector<double> phi(m + 1, 0.0), prev(m + 1, 0.0);
    double v = 1.0;  // prediction error variance (normalized)
    for (std::size_t k = 1; k <= m; ++k) {
        double num = rho[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * rho[k - j];
        if (v <= 0) throw std::runtime_error("Durbin-Levinson breakdown: predictor variance <= 0");
        double a = num / v;
        phi[k] = a;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - a * prev[k - j];
        v *= (1.0 - a * a);
        pac[k] = a;
        prev = phi;
    }
    return pac;
}

CorrelogramResult pacf(std::span<const double> x, std::size_t max_lag) {
    auto rho = acf(x, max_lag);
    CorrelogramResult out;
    out.values = durbin_levinson_pacf(rho.values);
    return out;
}

CorrelogramResult pacf(const ResidualSeries& x, std::size_t max_lag) {
    return pacf(std::span<const double>(x.values), max_lag);
}

namespace {

// Dickey-Fuller critical values, regression with constant and trend.
// Rows: sample size; columns: cumulative probabilities.
constexpr double kAdfProbs[] = {0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99};
constexpr double kAdfSizes[] = {25, 50, 100, 250, 500, 100000};
constexpr double kAdfTable[6][8] = {
    {-4.38, -3.95, -3.60, -3.24, -1.14, -0.80, -0.50, -0.15},
    {-4.15, -3.80, -3.50, -3.18, -1.19, -0.87, -0.58, -0.24},
    {-4.04, -3.73, -3.45, -3.15, -1.22, -0.90, -0.62, -0.28},
    {-3.99, -3.69, -3.43, -3.13, -1.23, -0.92, -0.64, -0.31},
    {-3.98, -3.68, -3.42, -3.13, -1.24, -0.93, -0.65, -0.32},
    {-3.96, -3.66, -3.41, -3.12, -1.25, -0.94, -0.66, -0.33},
};

double interp_monotone(std::span<const double> xs, std::span<const double> ys, double x,
                       bool* clamped) {
    if (x <= xs.front()) {
        if (x < xs.front() && clamped) *clamped = true;
        return ys.front();
    }
    if (x >= xs.back()) {
        if (x > xs.back() && clamped) *clamped = true;
        return ys.back();
    }
    std::size_t i = 1;
    while (xs[i] < x) ++i;
    double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

}  // namespace

AdfResult adf_test(std::span<const double> x) {
    std::size_t n = x.size();
    if (n < 25) throw std::invalid_argument("ADF test needs at least 25 observations");
    std::size_t k = static_cast<std::size_t>(std::cbrt(static_cast<double>(n - 1)));
    // Regression: dx_t = a + b*t + rho*x_{t-1} + sum_i g_i * dx_{t-i}, rows
    // start at t = k+2 so every lagged difference exists.
    std::size_t rows = n - 1 - k;
    std::size_t cols = 3 + k;
    if (rows <= cols) throw std::invalid_argument("insufficient data after ADF lagging");
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t t = r + k + 1;  // 0-based index of x_t
        y(static_cast<Eigen::Index>(r)) = x[t] - x[t - 1];
        X(static_cast<Eigen::Index>(r), 0) = 1.0;
        X(static_cast<Eigen::Index>(r), 1) = static_cast<double>(t + 1);
        X(static_cast<Eigen::Index>(r), 2) = x[t - 1];
        for (std::size_t i = 1; i <= k; ++i)
            X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(2 + i)) =
                x[t - i] - x[t - i - 1];
    }
    Eigen::MatrixXd XtX = X.transpose() * X;
    Eigen::LDLT<Eigen::MatrixXd> solver(XtX);
    Eigen::VectorXd beta = solver.solve(X.transpose() * y);
    Eigen::VectorXd resid = y - X * beta;
    double s2 = resid.squaredNorm() / static_cast<double>(rows - cols);
    Eigen::MatrixXd XtX_inv =
        solver.solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(cols),
                                               static_cast<Eigen::Index>(cols)));
    double se_rho = std::sqrt(s2 * XtX_inv(2, 2));

    AdfResult res;
    res.statistic = beta(2) / se_rho;
    res.lag_order = k;
    res.n_effective = rows;

    // Interpolate the table row for this sample size, then the p-value.
    double row[8];
    for (int c = 0; c < 8; ++c) {
        double col[6];
        for (int r = 0; r < 6; ++r) col[r] = kAdfTable[r][c];
        row[c] = interp_monotone(kAdfSizes, col, static_cast<double>(rows), nullptr);
    }
    bool clamped = false;
    res.p_value = interp_monotone(std::span<const double>(row, 8),
                                  std::span<const double>(kAdfProbs, 8), res.statistic, &clamped);
    res.clamped = clamped;
    return res;
}

AdfResult adf_test(const ResidualSeries& x) {
    return adf_test(std::span<const double>(x.values));
}

}  // namespace cyclecast
