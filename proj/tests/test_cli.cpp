#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "plot.hpp"
#include "cyclecast/series.hpp"

namespace fs = std::filesystem;
using namespace cyclecast;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("cyclecast_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& name = "") const { return (path / name).string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// daily CSV with trend + weekly cycle + deterministic noise
void write_daily_fixture(const std::string& path, std::size_t n) {
    std::ofstream out(path);
    out << "date,passengers\n";
    Date start{std::chrono::year{2017}, std::chrono::month{1}, std::chrono::day{1}};
    std::mt19937_64 rng(99);
    std::normal_distribution<double> dist(0.0, 5000.0);
    std::vector<double> weekly{9000, -4000, -3000, -1000, 500, 2000, -3500};
    for (std::size_t i = 0; i < n; ++i) {
        double v = 500000.0 - 150.0 * static_cast<double>(i + 1) + weekly[i % 7] + dist(rng);
        out << format_date(add_days(start, static_cast<long>(i))) << ","
            << static_cast<std::int64_t>(std::llround(v)) << "\n";
    }
}

}  // namespace

TEST_CASE("analyze produces its report files") {
    TempDir dir;
    std::string in = dir.str("daily.csv");
    write_daily_fixture(in, 400);
    std::string out = dir.str("analysis");
    int rc = cli::dispatch({"analyze", "--in", in, "--out", out, "--holdout", "30"});
    CHECK(rc == 0);
    for (const char* f : {"trend.json", "acf.csv", "pacf.csv", "adf.json",
                          "series_trend.svg", "acf.svg", "pacf.svg"})
        CHECK(fs::exists(fs::path(out) / f));
}

TEST_CASE("run executes the full pipeline and writes the report") {
    TempDir dir;
    std::string in = dir.str("daily.csv");
    write_daily_fixture(in, 400);
    std::string cfg = dir.str("run.cfg");
    {
        std::ofstream c(cfg);
        c << "# small configuration for tests\n"
             "holdout_days = 30\n"
             "cycle_periods = 7\n"
             "run_grid = false\n"
             "candidates = 1,0\n";
    }
    std::string out = dir.str("report");
    int rc = cli::dispatch({"run", "--in", in, "--config", cfg, "--out", out});
    CHECK(rc == 0);
    CHECK(fs::exists(fs::path(out) / "report.json"));
    CHECK(fs::exists(fs::path(out) / "table3.csv"));
    CHECK(fs::exists(fs::path(out) / "test_forecast_1_0.svg"));
    std::string report = read_file((fs::path(out) / "report.json").string());
    CHECK(report.find("\"baselines\"") != std::string::npos);
}

TEST_CASE("missing input file exits with 1 and leaves no outputs") {
    TempDir dir;
    std::string out = dir.str("analysis");
    int rc = cli::dispatch({"analyze", "--in", dir.str("absent.csv"), "--out", out});
    CHECK(rc == 1);
    bool no_outputs = !fs::exists(out) || fs::is_empty(out);
    CHECK(no_outputs);
}

TEST_CASE("holdout swallowing the series is a validation error") {
    TempDir dir;
    std::string in = dir.str("daily.csv");
    write_daily_fixture(in, 50);
    int rc = cli::dispatch({"analyze", "--in", in, "--out", dir.str("a"), "--holdout", "50"});
    CHECK(rc == 1);
}

TEST_CASE("the input series is never mutated") {
    TempDir dir;
    std::string in = dir.str("daily.csv");
    write_daily_fixture(in, 200);
    std::string before = read_file(in);
    cli::dispatch({"analyze", "--in", in, "--out", dir.str("a")});
    CHECK(read_file(in) == before);
}

TEST_CASE("residual CSV round-trips through the fixture format") {
    TempDir dir;
    ResidualSeries x{{1.5, -2.25, 0.0, 1e6}, 4};
    std::string path = dir.str("resid.csv");
    cli::write_residual_csv_file(x, path);
    ResidualSeries back = cli::read_residual_csv_file(path);
    CHECK(back.origin_index == 4);
    REQUIRE(back.values.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(back.values[i] == doctest::Approx(x.values[i]).epsilon(1e-12));
}

TEST_CASE("residual CSV with a gap in t is rejected") {
    TempDir dir;
    std::string path = dir.str("resid.csv");
    {
        std::ofstream out(path);
        out << "t,residual\n1,0.5\n3,0.7\n";
    }
    CHECK_THROWS(cli::read_residual_csv_file(path));
}

TEST_CASE("config parsing covers every supported key") {
    TempDir dir;
    std::string path = dir.str("pipeline.cfg");
    {
        std::ofstream out(path);
        out << "# comment\n"
               "holdout_days = 45\n"
               "cycle_periods = 7, 30, 365\n"
               "grid_p_max = 4\n"
               "grid_q_max = 5\n"
               "run_grid = true\n"
               "append_grid_selections = true\n"
               "multistep_forecast = true\n"
               "daniell_span = 5\n"
               "ar_spectrum_max_order = 12\n"
               "peak_count = 3\n"
               "seed = 17\n"
               "candidates = 2,2; 1,1\n"
               "level_adjust = false\n";
    }
    PipelineConfig cfg = cli::load_pipeline_config(path);
    CHECK(cfg.holdout_days == 45);
    CHECK(cfg.cycle_periods == std::vector<std::size_t>{7, 30, 365});
    CHECK(cfg.grid_p_max == 4);
    CHECK(cfg.grid_q_max == 5);
    CHECK(cfg.run_grid);
    CHECK(cfg.append_grid_selections);
    CHECK(cfg.multistep_forecast);
    CHECK(cfg.daniell_span == 5);
    CHECK(cfg.ar_spectrum_max_order == 12);
    CHECK(cfg.peak_count == 3);
    CHECK(cfg.seed == 17);
    REQUIRE(cfg.candidates.size() == 2);
    CHECK(cfg.candidates[0].spec == ArmaSpec{2, 2});
    CHECK(cfg.candidates[1].spec == ArmaSpec{1, 1});
    CHECK(!cfg.candidates[0].level_adjust);
}

TEST_CASE("unknown config keys are rejected") {
    TempDir dir;
    std::string path = dir.str("bad.cfg");
    {
        std::ofstream out(path);
        out << "holdout_dayz = 45\n";
    }
    CHECK_THROWS_AS(cli::load_pipeline_config(path), cli::ValidationError);
}

TEST_CASE("SVG rendering is deterministic") {
    plot::Series s{"a", {1, 2, 3}, {4.5, 2.25, 7.125}};
    plot::Options opts;
    opts.title = "demo";
    std::string one = plot::render_lines({s}, opts);
    std::string two = plot::render_lines({s}, opts);
    CHECK(one == two);
    CHECK(one.find("<svg") != std::string::npos);
}

TEST_CASE("a single-point series renders as a visible marker") {
    plot::Series s{"pt", {1}, {5}};
    std::string svg = plot::render_lines({s}, {});
    CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("heatmap renders one cell per matrix entry") {
    std::vector<double> values(100);
    for (std::size_t i = 0; i < 100; ++i) values[i] = static_cast<double>(i);
    std::string svg = plot::render_heatmap(values, 10, 10, {});
    std::size_t count = 0, pos = 0;
    while ((pos = svg.find("<rect", pos)) != std::string::npos) {
        ++count;
        pos += 5;
    }
    CHECK(count >= 100);  // 100 cells plus background/frame rects
}

TEST_CASE("empty plots are an error") {
    CHECK_THROWS(plot::render_lines({}, {}));
    CHECK_THROWS(plot::render_heatmap({}, 0, 0, {}));
}

TEST_CASE("atomic writes leave no temp files behind") {
    TempDir dir;
    std::string path = dir.str("plot.svg");
    plot::write_file_atomic(path, "<svg></svg>");
    CHECK(read_file(path) == "<svg></svg>");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path)) ++entries;
    CHECK(entries == 1);
}
