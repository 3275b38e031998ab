#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclecast/arma.hpp"
#include "cyclecast/cycles.hpp"
#include "cyclecast/ingest.hpp"
#include "cyclecast/series.hpp"
#include "cyclecast/spectral.hpp"
#include "cyclecast/stats.hpp"

namespace cyclecast {

struct CandidateSpec {
    ArmaSpec spec;
    bool level_adjust = false;
};

struct PipelineConfig {
    std::size_t holdout_days = 61;
    std::vector<std::size_t> cycle_periods = {7, 30, 45, 182, 365};
    std::size_t grid_p_max = 10;
    std::size_t grid_q_max = 10;
    std::vector<CandidateSpec> candidates = {
        {{9, 9}, true}, {{6, 4}, true}, {{1, 0}, true}};
    bool run_grid = true;
    bool append_grid_selections = false;
    bool multistep_forecast = false;  // default is rolling one-step-ahead
    std::size_t daniell_span = 3;
    std::size_t ar_spectrum_max_order = 30;
    std::size_t peak_count = 6;
    std::uint64_t seed = 0;
};

struct CandidateResult {
    ArmaSpec spec;
    std::vector<double> phi;
    std::vector<double> theta;
    double sigma2 = 0;
    double loglik = 0;
    bool converged = false;
    double adjustment = 0;
    double residual_train_rmse = 0;  // residual-scale, before level shift
    double train_rmse = 0;           // passenger-scale, after level shift
    double test_rmse = 0;
    std::string failure;  // non-empty when the fit failed
};

struct BaselineRow {
    std::string name;
    double test_rmse = 0;
};

struct EvaluationReport {
    PipelineConfig config;
    TrendModel trend;
    AdfResult adf_train;
    AdfResult adf_final;
    PeakSet detected_peaks;
    CycleSet cycles;
    std::vector<CandidateResult> candidates;
    std::optional<GridResult> grid;
    std::vector<BaselineRow> baselines;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
};

/// trend(t) + cycles(t) + residual prediction, for t = t_start, t_start+1, ...
std::vector<double> reconstruct(const TrendModel& trend, const CycleSet& cs,
                                std::span<const double> residual_pred, std::int64_t t_start);

double rmse(std::span<const double> pred, std::span<const double> actual);

/// Full experiment: split, detrend, test stationarity, strip cycles, fit
/// candidates (and optionally the order grid), evaluate on train and test,
/// and attach the baseline comparison. Every fitted quantity depends on
/// train data only.
EvaluationReport run_pipeline(const PipelineConfig& config, const DailySeries& series);

/// The simple-model comparison table: train-mean, trend extrapolation,
/// trend + weekly cycle, persistence, and AR(1) without cycle removal.
std::vector<BaselineRow> baseline_suite(const SplitSeries& split, const TrendModel& trend);

}  // namespace cyclecast
