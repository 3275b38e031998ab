#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <glob.h>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace cyclecast::cli {

namespace {

// ---- small I/O helpers --------------------------------------------------

void write_text_atomic(const fs::path& path, const std::string& content) {
    plot::write_file_atomic(path.string(), content);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
    std::vector<std::string> paths;
    for (const auto& pat : patterns) {
        glob_t g{};
        int rc = glob(pat.c_str(), GLOB_TILDE, nullptr, &g);
        if (rc == 0) {
            for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
        } else if (rc == GLOB_NOMATCH) {
            // a literal path that exists still counts
            if (fs::exists(pat)) paths.push_back(pat);
        }
        globfree(&g);
    }
    std::sort(paths.begin(), paths.end());
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
    return paths;
}

void require_input_file(const std::string& path) {
    if (!fs::exists(path)) throw ValidationError("input file not found: " + path);
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw ValidationError("cannot create output directory " + dir);
    return p;
}

// ---- JSON conversions ---------------------------------------------------

json to_json(const TrendModel& t) {
    return {{"intercept", t.intercept}, {"slope", t.slope},
            {"intercept_se", t.intercept_se}, {"slope_se", t.slope_se},
            {"intercept_t", t.intercept_t}, {"slope_t", t.slope_t}, {"n", t.n}};
}

json to_json(const AdfResult& a) {
    json j{{"statistic", a.statistic}, {"lag_order", a.lag_order},
           {"p_value", a.p_value}, {"clamped", a.clamped}, {"n_effective", a.n_effective}};
    if (std::isnan(a.statistic)) j["note"] = "degenerate input; test not computable";
    return j;
}

json to_json(const PeakSet& peaks) {
    json arr = json::array();
    for (const auto& p : peaks)
        arr.push_back({{"period", p.period}, {"frequency", p.frequency}, {"power", p.power}});
    return arr;
}

json to_json(const CycleSet& cs) {
    json arr = json::array();
    for (const auto& c : cs.profiles)
        arr.push_back({{"period", c.period}, {"phase_means", c.phase_means}});
    return arr;
}

json to_json(const GridResult& g) {
    json cells = json::array();
    for (const auto& c : g.cells) {
        json cell{{"p", c.spec.p}, {"q", c.spec.q}, {"ok", c.ok}};
        if (c.ok) {
            cell["aic_n"] = c.criteria.aic_n;
            cell["bic_n"] = c.criteria.bic_n;
            cell["hmean_n"] = c.criteria.hmean_n;
            cell["loglik"] = c.loglik;
        } else {
            cell["failure"] = c.failure;
        }
        cells.push_back(cell);
    }
    return {{"p_max", g.p_max}, {"q_max", g.q_max}, {"cells", cells},
            {"best_by_aic", {{"p", g.best_by_aic.p}, {"q", g.best_by_aic.q}}},
            {"best_by_hmean", {{"p", g.best_by_hmean.p}, {"q", g.best_by_hmean.q}}}};
}

json to_json(const EvaluationReport& rep) {
    json cands = json::array();
    for (const auto& c : rep.candidates) {
        json jc{{"p", c.spec.p}, {"q", c.spec.q}};
        if (!c.failure.empty()) {
            jc["failure"] = c.failure;
        } else {
            jc["phi"] = c.phi;
            jc["theta"] = c.theta;
            jc["sigma2"] = c.sigma2;
            jc["loglik"] = c.loglik;
            jc["converged"] = c.converged;
            jc["adjustment"] = c.adjustment;
            jc["residual_train_rmse"] = c.residual_train_rmse;
            jc["train_rmse"] = c.train_rmse;
            jc["test_rmse"] = c.test_rmse;
        }
        cands.push_back(jc);
    }
    json baselines = json::array();
    for (const auto& b : rep.baselines)
        baselines.push_back({{"name", b.name}, {"test_rmse", b.test_rmse}});

    const PipelineConfig& cfg = rep.config;
    json jcfg{{"holdout_days", cfg.holdout_days}, {"cycle_periods", cfg.cycle_periods},
              {"grid_p_max", cfg.grid_p_max}, {"grid_q_max", cfg.grid_q_max},
              {"run_grid", cfg.run_grid}, {"multistep_forecast", cfg.multistep_forecast},
              {"daniell_span", cfg.daniell_span}, {"peak_count", cfg.peak_count},
              {"seed", cfg.seed}};
    json jcands_cfg = json::array();
    for (const auto& c : cfg.candidates)
        jcands_cfg.push_back({{"p", c.spec.p}, {"q", c.spec.q}, {"level_adjust", c.level_adjust}});
    jcfg["candidates"] = jcands_cfg;

    json j{{"config", jcfg},
           {"n_train", rep.n_train},
           {"n_test", rep.n_test},
           {"trend", to_json(rep.trend)},
           {"adf_train", to_json(rep.adf_train)},
           {"adf_final", to_json(rep.adf_final)},
           {"detected_peaks", to_json(rep.detected_peaks)},
           {"cycles", to_json(rep.cycles)},
           {"candidates", cands},
           {"baselines", baselines}};
    if (rep.grid) j["grid"] = to_json(*rep.grid);
    return j;
}

std::string correlogram_csv(const CorrelogramResult& c) {
    std::ostringstream out;
    out << "lag,value\n";
    for (std::size_t h = 0; h < c.values.size(); ++h) out << h << ',' << fmt(c.values[h]) << '\n';
    return out.str();
}

std::string spectrum_csv(const SpectralDensity& s) {
    std::ostringstream out;
    out << "frequency,power,estimator\n";
    std::string label = estimator_label(s);
    for (std::size_t i = 0; i < s.size(); ++i)
        out << fmt(s.frequencies[i]) << ',' << fmt(s.power[i]) << ',' << label << '\n';
    return out.str();
}

plot::Series spectrum_series(const SpectralDensity& s) {
    return {estimator_label(s), s.frequencies, s.power};
}

std::vector<double> index_axis(std::size_t n, double start = 1) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = start + static_cast<double>(i);
    return x;
}

// ---- subcommands ----------------------------------------------------------

int cmd_aggregate(const std::vector<std::string>& inputs, const std::string& from,
                  const std::string& to, const std::string& out, bool strict,
                  std::int64_t max_count) {
    DateWindow window{parse_date(from), parse_date(to)};
    if (days_between(window.from, window.to) < 0)
        throw ValidationError("--from must not be after --to");
    auto paths = expand_globs(inputs);
    if (paths.empty()) throw ValidationError("no input files match");

    AggregateOptions opts;
    opts.strict = strict;
    if (max_count >= 0) opts.max_passenger_count = max_count;
    Aggregator agg(window, opts);
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open " + path);
        agg.consume_csv(in);
    }
    DailySeries series = agg.finish();
    std::ostringstream buf;
    write_daily_csv(series, buf);
    write_text_atomic(out, buf.str());
    const auto& st = agg.stats();
    std::cerr << "aggregated " << st.accepted << " trips into " << series.size() << " days ("
              << st.skipped_out_of_window << " out-of-window, " << st.skipped_unparseable
              << " unparseable, " << st.skipped_filtered << " filtered)\n";
    return 0;
}

int cmd_analyze(const std::string& in, const std::string& out_dir, std::size_t max_lag,
                std::size_t holdout) {
    require_input_file(in);
    DailySeries series = read_daily_csv_file(in);
    if (holdout > 0) {
        if (holdout >= series.size())
            throw ValidationError("--holdout must be smaller than the series length");
        series = split_train_test(series, holdout).train;
    }
    if (max_lag >= series.size())
        throw ValidationError("--max-lag must be smaller than the series length");
    fs::path dir = prepare_out_dir(out_dir);

    TrendModel trend = fit_linear_trend(series);
    std::vector<double> counts(series.counts.begin(), series.counts.end());
    CorrelogramResult a = acf(counts, max_lag);
    CorrelogramResult pa = pacf(counts, max_lag);
    ResidualSeries resid = detrend(series, trend);
    AdfResult adf = adf_test(resid);

    write_text_atomic(dir / "trend.json", to_json(trend).dump(2) + "\n");
    write_text_atomic(dir / "acf.csv", correlogram_csv(a));
    write_text_atomic(dir / "pacf.csv", correlogram_csv(pa));
    write_text_atomic(dir / "adf.json", to_json(adf).dump(2) + "\n");

    std::vector<double> t = index_axis(series.size());
    std::vector<double> fitted(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) fitted[i] = trend.at(t[i]);
    write_text_atomic(dir / "series_trend.svg",
                      plot::render_lines({{"passengers", t, counts}, {"trend", t, fitted}},
                                         {"Daily passengers with linear trend", "day",
                                          "passengers"}));
    write_text_atomic(dir / "acf.svg",
                      plot::render_profile(a.values, {"ACF", "lag (days)", "correlation"}));
    std::vector<double> pa_plot = pa.values;
    pa_plot[0] = 0;  // lag 0 is not a partial autocorrelation
    write_text_atomic(dir / "pacf.svg",
                      plot::render_profile(pa_plot, {"PACF", "lag (days)", "correlation"}));
    return 0;
}

int cmd_spectrum(const std::string& in, const std::string& out_dir, std::size_t span,
                 std::size_t ar_max, std::size_t peaks_k) {
    require_input_file(in);
    ResidualSeries resid = read_residual_csv_file(in);
    fs::path dir = prepare_out_dir(out_dir);

    SpectralDensity raw = periodogram(resid);
    SpectralDensity smooth = daniell_smooth(raw, span);
    SpectralDensity ar = ar_spectrum(resid, ar_max);
    double min_sep = 2.0 / static_cast<double>(resid.size());
    PeakSet peaks = dominant_periods(smooth, peaks_k, min_sep);

    write_text_atomic(dir / "spectrum_raw.csv", spectrum_csv(raw));
    write_text_atomic(dir / "spectrum_daniell.csv", spectrum_csv(smooth));
    write_text_atomic(dir / "spectrum_ar.csv", spectrum_csv(ar));
    write_text_atomic(dir / "peaks.json", to_json(peaks).dump(2) + "\n");
    std::vector<plot::Series> overlay{spectrum_series(smooth), spectrum_series(ar)};
    write_text_atomic(dir / "spectrum.svg",
                      plot::render_lines(overlay, {"Spectral density", "frequency (cycles/day)",
                                                   "power"}));
    plot::Options log_opts{"Spectral density (log)", "frequency (cycles/day)", "power"};
    log_opts.log_y = true;
    write_text_atomic(dir / "spectrum_log.svg", plot::render_lines(overlay, log_opts));
    return 0;
}

int cmd_cycles(const std::string& in, const std::string& out_dir,
               std::vector<std::size_t> periods) {
    require_input_file(in);
    if (periods.empty()) throw ValidationError("--periods must list at least one period");
    ResidualSeries resid = read_residual_csv_file(in);
    fs::path dir = prepare_out_dir(out_dir);

    auto [final_resid, cs] = remove_cycles_sequential(resid, periods);
    write_text_atomic(dir / "cycles.json", to_json(cs).dump(2) + "\n");
    std::ostringstream buf;
    buf << "t,residual\n";
    for (std::size_t i = 0; i < final_resid.size(); ++i)
        buf << (final_resid.origin_index + static_cast<std::int64_t>(i)) << ','
            << fmt(final_resid.values[i]) << '\n';
    write_text_atomic(dir / "final_residuals.csv", buf.str());

    for (const auto& profile : cs.profiles) {
        std::string name = "cycle_" + std::to_string(profile.period) + ".svg";
        write_text_atomic(dir / name,
                          plot::render_profile(profile.phase_means,
                                               {std::to_string(profile.period) + "-day cycle",
                                                "phase (days)", "mean residual"}));
    }
    SpectralDensity after = daniell_smooth(periodogram(final_resid), 3);
    write_text_atomic(dir / "spectrum_after.svg",
                      plot::render_lines({spectrum_series(after)},
                                         {"Spectrum after cycle removal",
                                          "frequency (cycles/day)", "power"}));
    return 0;
}

int cmd_fit(const std::string& in, const std::string& out, const std::string& grid_arg,
            const std::string& order_arg, std::uint64_t seed) {
    require_input_file(in);
    if (grid_arg.empty() == order_arg.empty())
        throw ValidationError("exactly one of --grid or --order is required");
    ResidualSeries resid = read_residual_csv_file(in);
    FitOptions opts;
    opts.seed = seed;

    if (!order_arg.empty()) {
        std::size_t p = 0, q = 0;
        if (std::sscanf(order_arg.c_str(), "%zu,%zu", &p, &q) != 2 || p + q == 0)
            throw ValidationError("--order expects `p,q` with p + q >= 1");
        ArmaModel m = fit_arma(resid, {p, q}, opts);
        InformationCriteria ic = information_criteria(m);
        json j{{"p", m.spec.p}, {"q", m.spec.q}, {"phi", m.phi}, {"theta", m.theta},
               {"sigma2", m.sigma2}, {"loglik", m.loglik}, {"n", m.n},
               {"converged", m.converged}, {"aic_n", ic.aic_n}, {"bic_n", ic.bic_n},
               {"hmean_n", ic.hmean_n}};
        write_text_atomic(out, j.dump(2) + "\n");
        return 0;
    }

    std::size_t p_max = 0, q_max = 0;
    if (std::sscanf(grid_arg.c_str(), "%zux%zu", &p_max, &q_max) != 2 || p_max < 1 || q_max < 1)
        throw ValidationError("--grid expects `PxQ`, e.g. 10x10");
    GridResult g = grid_search(resid, p_max, q_max, opts);
    write_text_atomic(out, to_json(g).dump(2) + "\n");

    auto matrix = [&](auto getter) {
        std::vector<double> m(p_max * q_max, std::numeric_limits<double>::quiet_NaN());
        for (const auto& c : g.cells)
            if (c.ok) m[(c.spec.p - 1) * q_max + (c.spec.q - 1)] = getter(c);
        return m;
    };
    fs::path dir = fs::path(out).parent_path();
    if (dir.empty()) dir = ".";
    write_text_atomic(dir / "aic_heatmap.svg",
                      plot::render_heatmap(matrix([](const GridCell& c) { return c.criteria.aic_n; }),
                                           p_max, q_max,
                                           {"AIC per observation", "q", "p"}));
    write_text_atomic(dir / "hmean_heatmap.svg",
                      plot::render_heatmap(
                          matrix([](const GridCell& c) { return c.criteria.hmean_n; }), p_max,
                          q_max, {"AIC/BIC harmonic mean per observation", "q", "p"}));
    return 0;
}

int cmd_run(const std::string& in, const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_flag, bool json_summary) {
    require_input_file(in);
    PipelineConfig cfg;
    if (!config_path.empty()) {
        require_input_file(config_path);
        cfg = load_pipeline_config(config_path);
    }
    if (seed_flag) cfg.seed = *seed_flag;
    DailySeries series = read_daily_csv_file(in);
    if (series.size() <= cfg.holdout_days + 30)
        throw ValidationError("series too short for holdout of " +
                              std::to_string(cfg.holdout_days) + " days");
    fs::path dir = prepare_out_dir(out_dir);

    EvaluationReport rep = run_pipeline(cfg, series);

    write_text_atomic(dir / "report.json", to_json(rep).dump(2) + "\n");

    std::ostringstream t2;
    t2 << "model,adjustment,train_rmse,test_rmse\n";
    for (const auto& c : rep.candidates) {
        t2 << "ARMA(" << c.spec.p << ";" << c.spec.q << ")";
        if (!c.failure.empty())
            t2 << ",failed,,\n";
        else
            t2 << ',' << fmt(c.adjustment) << ',' << fmt(c.train_rmse) << ',' << fmt(c.test_rmse)
               << '\n';
    }
    write_text_atomic(dir / "table2.csv", t2.str());

    std::ostringstream t3;
    t3 << "model,test_rmse\n";
    for (const auto& b : rep.baselines) t3 << b.name << ',' << fmt(b.test_rmse) << '\n';
    write_text_atomic(dir / "table3.csv", t3.str());

    // per-candidate train-fit and test-forecast plots
    SplitSeries split = split_train_test(series, cfg.holdout_days);
    ResidualSeries detrended = detrend(split.train, rep.trend);
    ResidualSeries final_resid = detrended;
    for (const auto& profile : rep.cycles.profiles)
        final_resid = remove_cycle(final_resid, profile);
    std::vector<double> t_train = index_axis(split.train.size());
    std::vector<double> t_test = index_axis(split.test.size(),
                                            static_cast<double>(split.train.size()) + 1);
    std::vector<double> train_actual(split.train.counts.begin(), split.train.counts.end());
    std::vector<double> test_actual(split.test.counts.begin(), split.test.counts.end());

    for (const auto& c : rep.candidates) {
        if (!c.failure.empty()) continue;
        std::string tag = std::to_string(c.spec.p) + "_" + std::to_string(c.spec.q);
        ArmaModel m;
        m.spec = c.spec;
        m.phi = c.phi;
        m.theta = c.theta;
        m.sigma2 = c.sigma2;
        m.loglik = c.loglik;
        m.n = rep.n_train;
        m.converged = c.converged;

        std::vector<double> resid_pred = predict_in_sample(m, final_resid);
        for (double& v : resid_pred) v += c.adjustment;
        write_text_atomic(dir / ("residual_fit_" + tag + ".svg"),
                          plot::render_lines({{"actual", t_train, final_resid.values},
                                              {"predicted", t_train, resid_pred}},
                                             {"Residual fit ARMA(" + std::to_string(c.spec.p) +
                                                  "," + std::to_string(c.spec.q) + ")",
                                              "day", "residual"}));
        std::vector<double> train_recon = reconstruct(rep.trend, rep.cycles, resid_pred, 1);
        write_text_atomic(dir / ("train_fit_" + tag + ".svg"),
                          plot::render_lines({{"actual", t_train, train_actual},
                                              {"predicted", t_train, train_recon}},
                                             {"Train predictions ARMA(" +
                                                  std::to_string(c.spec.p) + "," +
                                                  std::to_string(c.spec.q) + ")",
                                              "day", "passengers"}));

        std::vector<double> resid_test(split.test.size());
        for (std::size_t i = 0; i < resid_test.size(); ++i) {
            auto t = static_cast<std::int64_t>(split.train.size() + 1 + i);
            resid_test[i] = test_actual[i] - rep.trend.at(static_cast<double>(t)) -
                            cycle_value_at(rep.cycles, t);
        }
        std::vector<double> test_pred =
            cfg.multistep_forecast ? forecast_multistep(m, final_resid, resid_test.size())
                                   : forecast_rolling(m, final_resid, resid_test);
        for (double& v : test_pred) v += c.adjustment;
        std::vector<double> test_recon = reconstruct(
            rep.trend, rep.cycles, test_pred, static_cast<std::int64_t>(split.train.size()) + 1);
        write_text_atomic(dir / ("test_forecast_" + tag + ".svg"),
                          plot::render_lines({{"actual", t_test, test_actual},
                                              {"predicted", t_test, test_recon}},
                                             {"Test forecast ARMA(" + std::to_string(c.spec.p) +
                                                  "," + std::to_string(c.spec.q) + ")",
                                              "day", "passengers"}));
    }

    if (json_summary) {
        json summary{{"n_train", rep.n_train}, {"n_test", rep.n_test}};
        json cands = json::array();
        for (const auto& c : rep.candidates)
            cands.push_back({{"p", c.spec.p}, {"q", c.spec.q},
                             {"test_rmse", c.failure.empty() ? json(c.test_rmse) : json()},
                             {"failure", c.failure}});
        summary["candidates"] = cands;
        std::cout << summary.dump() << '\n';
    } else {
        std::cerr << "report written to " << dir.string() << '\n';
    }
    return 0;
}

}  // namespace

ResidualSeries read_residual_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty residual CSV: " + path);
    ResidualSeries out;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::int64_t t = 0;
        double v = 0;
        if (std::sscanf(line.c_str(), "%ld,%lf", &t, &v) != 2)
            throw ValidationError("bad residual CSV row: '" + line + "'");
        if (first) {
            out.origin_index = t;
            first = false;
        } else if (t != out.origin_index + static_cast<std::int64_t>(out.values.size())) {
            throw ValidationError("residual CSV t-index not contiguous at t=" +
                                  std::to_string(t));
        }
        out.values.push_back(v);
    }
    if (out.values.empty()) throw ValidationError("residual CSV has no data rows: " + path);
    return out;
}

void write_residual_csv_file(const ResidualSeries& x, const std::string& path) {
    std::ostringstream buf;
    buf << "t,residual\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        buf << (x.origin_index + static_cast<std::int64_t>(i)) << ',' << fmt(x.values[i]) << '\n';
    plot::write_file_atomic(path, buf.str());
}

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config " + path);
    PipelineConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ValidationError(path + ":" + std::to_string(lineno) +
                                      ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r\"");
            auto e = s.find_last_not_of(" \t\r\"");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto as_u64 = [&] { return std::stoull(value); };
        auto as_bool = [&] {
            if (value == "true") return true;
            if (value == "false") return false;
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected true/false");
        };
        auto as_size_list = [&] {
            std::vector<std::size_t> out;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
            return out;
        };
        try {
            if (key == "holdout_days") cfg.holdout_days = as_u64();
            else if (key == "cycle_periods") cfg.cycle_periods = as_size_list();
            else if (key == "grid_p_max") cfg.grid_p_max = as_u64();
            else if (key == "grid_q_max") cfg.grid_q_max = as_u64();
            else if (key == "run_grid") cfg.run_grid = as_bool();
            else if (key == "append_grid_selections") cfg.append_grid_selections = as_bool();
            else if (key == "multistep_forecast") cfg.multistep_forecast = as_bool();
            else if (key == "daniell_span") cfg.daniell_span = as_u64();
            else if (key == "ar_spectrum_max_order") cfg.ar_spectrum_max_order = as_u64();
            else if (key == "peak_count") cfg.peak_count = as_u64();
            else if (key == "seed") cfg.seed = as_u64();
            else if (key == "level_adjust") {
                bool flag = as_bool();
                for (auto& c : cfg.candidates) c.level_adjust = flag;
            } else if (key == "candidates") {
                // e.g. candidates = 9,9;6,4;1,0
                std::vector<CandidateSpec> cands;
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ';')) {
                    std::size_t p = 0, q = 0;
                    if (std::sscanf(item.c_str(), "%zu,%zu", &p, &q) != 2 || p + q == 0)
                        throw ValidationError(path + ":" + std::to_string(lineno) +
                                              ": bad candidate spec '" + item + "'");
                    cands.push_back({{p, q}, true});
                }
                if (!cands.empty()) cfg.candidates = cands;
            } else {
                throw ValidationError(path + ":" + std::to_string(lineno) + ": unknown key '" +
                                      key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": bad value for '" +
                                  key + "'");
        }
    }
    return cfg;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"time-series decomposition and forecasting toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    bool have_seed = false;
    bool json_out = false;
    app.add_flag("--json", json_out, "machine-readable summaries on stdout");
    app.add_option("--seed", seed, "seed for all stochastic components")
        ->each([&](const std::string&) { have_seed = true; });

    // aggregate
    auto* agg = app.add_subcommand("aggregate", "aggregate trip CSVs into a daily series");
    std::vector<std::string> agg_inputs;
    std::string agg_from, agg_to, agg_out;
    bool agg_strict = false;
    std::int64_t agg_max_count = -1;
    agg->add_option("--input", agg_inputs, "trip CSV files or globs")->required();
    agg->add_option("--from", agg_from, "window start date (YYYY-MM-DD)")->required();
    agg->add_option("--to", agg_to, "window end date, inclusive")->required();
    agg->add_option("--out", agg_out, "output daily CSV path")->required();
    agg->add_flag("--strict", agg_strict, "abort on unparseable rows");
    agg->add_option("--max-count", agg_max_count, "skip rows with larger passenger counts");

    // analyze
    auto* ana = app.add_subcommand("analyze", "trend, ACF/PACF and stationarity report");
    std::string ana_in, ana_out;
    std::size_t ana_max_lag = 40, ana_holdout = 0;
    ana->add_option("--in", ana_in, "daily CSV")->required();
    ana->add_option("--out", ana_out, "output directory")->required();
    ana->add_option("--max-lag", ana_max_lag, "correlogram depth");
    ana->add_option("--holdout", ana_holdout, "drop the last N days before analysis");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "spectral density estimation and peak detection");
    std::string spec_in, spec_out;
    std::size_t spec_span = 3, spec_ar_max = 30, spec_peaks = 6;
    spec->add_option("--in", spec_in, "residual CSV (t,residual)")->required();
    spec->add_option("--out", spec_out, "output directory")->required();
    spec->add_option("--span", spec_span, "Daniell span (odd)");
    spec->add_option("--ar-max", spec_ar_max, "max AR order for the AR spectrum");
    spec->add_option("--peaks", spec_peaks, "number of dominant peaks to report");

    // cycles
    auto* cyc = app.add_subcommand("cycles", "sequential phase-mean cycle removal");
    std::string cyc_in, cyc_out;
    std::vector<std::size_t> cyc_periods;
    cyc->add_option("--in", cyc_in, "residual CSV (t,residual)")->required();
    cyc->add_option("--periods", cyc_periods, "cycle periods in days")
        ->required()
        ->delimiter(',');
    cyc->add_option("--out", cyc_out, "output directory")->required();

    // fit
    auto* fit = app.add_subcommand("fit", "ARMA maximum-likelihood fitting");
    std::string fit_in, fit_out, fit_grid, fit_order;
    fit->add_option("--in", fit_in, "residual CSV (t,residual)")->required();
    fit->add_option("--out", fit_out, "output JSON path")->required();
    fit->add_option("--grid", fit_grid, "order grid, e.g. 10x10");
    fit->add_option("--order", fit_order, "single order, e.g. 1,0");

    // run
    auto* run = app.add_subcommand("run", "full decomposition + forecasting pipeline");
    std::string run_in, run_cfg, run_out;
    run->add_option("--in", run_in, "daily CSV")->required();
    run->add_option("--config", run_cfg, "flat key=value config file");
    run->add_option("--out", run_out, "output directory")->required();

    std::vector<std::string> argv_copy = args;
    try {
        std::vector<const char*> argv{"cyclecast"};
        for (const auto& a : argv_copy) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*agg) return cmd_aggregate(agg_inputs, agg_from, agg_to, agg_out, agg_strict,
                                       agg_max_count);
        if (*ana) return cmd_analyze(ana_in, ana_out, ana_max_lag, ana_holdout);
        if (*spec) return cmd_spectrum(spec_in, spec_out, spec_span, spec_ar_max, spec_peaks);
        if (*cyc) return cmd_cycles(cyc_in, cyc_out, cyc_periods);
        if (*fit) return cmd_fit(fit_in, fit_out, fit_grid, fit_order, seed);
        if (*run)
            return cmd_run(run_in, run_cfg, run_out,
                           have_seed ? std::optional<std::uint64_t>(seed) : std::nullopt,
                           json_out);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cyclecast::cli
