#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclecast/series.hpp"

namespace cyclecast {

struct ArmaSpec {
    std::size_t p = 0;
    std::size_t q = 0;

    bool operator==(const ArmaSpec&) const = default;
};

/// Fitted zero-mean Gaussian ARMA(p, q) model. AR and MA polynomials are
/// stationary/invertible by construction of the fitting parameterization.
struct ArmaModel {
    ArmaSpec spec;
    std::vector<double> phi;    // AR coefficients, length p
    std::vector<double> theta;  // MA coefficients, length q
    double sigma2 = 0;          // innovation variance
    double loglik = 0;          // exact Gaussian log-likelihood
    std::size_t n = 0;          // training length
    bool converged = false;
    std::size_t restarts_used = 0;
};

struct FitOptions {
    std::size_t max_iterations = 500;
    std::size_t max_restarts = 5;
    std::uint64_t seed = 0;  // base seed for deterministic restart perturbations
};

/// Maximize the exact Gaussian likelihood (state-space innovations form) over
/// the stationary/invertible region. Initialized by a two-stage long-AR
/// regression; deterministic restarts on non-convergence.
ArmaModel fit_arma(const ResidualSeries& x, ArmaSpec spec, const FitOptions& opts = {});
ArmaModel fit_arma(std::span<const double> x, ArmaSpec spec, const FitOptions& opts = {});

/// Exact Gaussian log-likelihood of data x under the given coefficients with
/// the innovation variance profiled out. Returns the profiled sigma2 too.
struct LikelihoodResult {
    double loglik = 0;
    double sigma2 = 0;
};
LikelihoodResult arma_loglik(std::span<const double> x, std::span<const double> phi,
                             std::span<const double> theta);

struct InformationCriteria {
    double aic_n = 0;    // AIC / n
    double bic_n = 0;    // BIC / n
    double hmean_n = 0;  // harmonic mean of the two
};

/// Per-observation criteria with k = p + q + 1 (innovation variance counted).
InformationCriteria information_criteria(const ArmaModel& m);

struct GridCell {
    ArmaSpec spec;
    InformationCriteria criteria;
    double loglik = 0;
    bool ok = false;
    std::string failure;
};

struct GridResult {
    std::size_t p_max = 0;
    std::size_t q_max = 0;
    std::vector<GridCell> cells;  // row-major over (p, q) in [1, p_max] x [1, q_max]
    ArmaSpec best_by_aic;
    ArmaSpec best_by_hmean;

    const GridCell& at(std::size_t p, std::size_t q) const;
};

/// Fit every (p, q) in [1, p_max] x [1, q_max]; individual failures are
/// recorded, not fatal. Deterministic regardless of execution order.
GridResult grid_search(const ResidualSeries& x, std::size_t p_max, std::size_t q_max,
                       const FitOptions& opts = {});

/// One-step-ahead in-sample predictions E[x_t | x_1..x_{t-1}]; the first
/// prediction is the unconditional mean 0.
std::vector<double> predict_in_sample(const ArmaModel& m, const ResidualSeries& x);

/// Rolling one-step-ahead forecasts over the test values: parameters frozen,
/// filter state advanced through each observed test value in turn.
std::vector<double> forecast_rolling(const ArmaModel& m, const ResidualSeries& train,
                                     std::span<const double> test);

/// Multi-step forecast from the end of train (no test observations used).
std::vector<double> forecast_multistep(const ArmaModel& m, const ResidualSeries& train,
                                       std::size_t horizon);

struct LevelAdjustment {
    double constant = 0;
    double rmse_before = 0;
    double rmse_after = 0;
};

/// Closed-form constant shift minimizing RMSE: the mean prediction error.
LevelAdjustment optimize_level_shift(std::span<const double> pred, std::span<const double> actual);

/// Simulate a zero-mean Gaussian ARMA path (burn-in discarded), for tests and
/// seeded diagnostics.
std::vector<double> simulate_arma(std::span<const double> phi, std::span<const double> theta,
                                  double sigma2, std::size_t n, std::uint64_t seed,
                                  std::size_t burn_in = 500);

/// True when the polynomial 1 - sum c_j z^j has all roots outside the unit
/// circle (checked via the partial-autocorrelation representation).
bool is_stationary(std::span<const double> coeffs);

}  // namespace cyclecast
