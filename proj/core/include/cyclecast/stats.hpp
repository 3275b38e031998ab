#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cyclecast/series.hpp"

namespace cyclecast {

/// OLS line fit of counts on t = 1..n, with classical standard errors.
struct TrendModel {
    double intercept = 0;
    double slope = 0;
    double intercept_se = 0;
    double slope_se = 0;
    double intercept_t = 0;
    double slope_t = 0;
    std::size_t n = 0;

    double at(double t) const { return intercept + slope * t; }
};

TrendModel fit_linear_trend(const DailySeries& series);
TrendModel fit_linear_trend(std::span<const double> values, std::int64_t origin_index = 1);

ResidualSeries detrend(const DailySeries& series, const TrendModel& trend);
ResidualSeries detrend(const ResidualSeries& x, const TrendModel& trend);

struct CorrelogramResult {
    std::vector<double> values;  // index = lag, values[0] meaningful for ACF only

    double at(std::size_t lag) const { return values.at(lag); }
    std::size_t max_lag() const { return values.size() - 1; }
};

/// Biased (divisor-n) sample autocorrelation, lags 0..max_lag. The divisor-n
/// convention keeps the autocovariance sequence positive definite, which the
/// Durbin-Levinson recursion in pacf() relies on.
CorrelogramResult acf(std::span<const double> x, std::size_t max_lag);
CorrelogramResult acf(const ResidualSeries& x, std::size_t max_lag);

/// Partial autocorrelations via Durbin-Levinson on acf(). values[0] is unused
/// (set to 1 by convention); pacf(1) == acf(1).
CorrelogramResult pacf(std::span<const double> x, std::size_t max_lag);
CorrelogramResult pacf(const ResidualSeries& x, std::size_t max_lag);

/// Durbin-Levinson on a given autocorrelation sequence rho[0..m], rho[0]=1.
/// Returns partial autocorrelations phi_kk for k = 1..m (index 0 set to 1).
std::vector<double> durbin_levinson_pacf(std::span<const double> rho);

struct AdfResult {
    double statistic = 0;
    std::size_t lag_order = 0;
    double p_value = 0;   // clamped to [0.01, 0.99]
    bool clamped = false; // true when the statistic fell outside the table
    std::size_t n_effective = 0;
};

/// Augmented Dickey-Fuller test, with-trend regression variant, lag order
/// k = trunc((n-1)^(1/3)). P-value by bilinear interpolation in the classic
/// trend-case critical value table, clamped to [0.01, 0.99].
AdfResult adf_test(const ResidualSeries& x);
AdfResult adf_test(std::span<const double> x);

}  // namespace cyclecast
