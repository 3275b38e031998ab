#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <span>

#include "cyclecast/cycles.hpp"

using namespace cyclecast;

namespace {

ResidualSeries series(std::vector<double> v, std::int64_t origin = 1) {
    return ResidualSeries{std::move(v), origin};
}

double variance(std::span<const double> x) {
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double ssq = 0;
    for (double v : x) ssq += (v - mean) * (v - mean);
    return ssq / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("exact periodic signal recovers its profile") {
    ResidualSeries x = series({1, 2, 3, 1, 2, 3, 1, 2, 3});
    CycleProfile c = extract_cycle(x, 3);
    CHECK(c.phase_means[0] == doctest::Approx(1.0));
    CHECK(c.phase_means[1] == doctest::Approx(2.0));
    CHECK(c.phase_means[2] == doctest::Approx(3.0));
}

TEST_CASE("constant series has a constant profile") {
    ResidualSeries x = series(std::vector<double>(14, 4.5));
    CycleProfile c = extract_cycle(x, 7);
    for (double m : c.phase_means) CHECK(m == doctest::Approx(4.5));
}

TEST_CASE("extraction rejects degenerate inputs") {
    ResidualSeries x = series({1, 2, 3, 4});
    CHECK_THROWS(extract_cycle(x, 1));
    CHECK_THROWS(extract_cycle(x, 5));  // period longer than the series
}

TEST_CASE("removing an extracted cycle nulls every phase mean") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> dist(0.0, 20000.0);
    std::vector<double> v(1034);
    for (std::size_t t = 0; t < v.size(); ++t)
        v[t] = 5000.0 * std::sin(2.0 * 3.14159265358979 * t / 7.0) + dist(rng);
    ResidualSeries x = series(std::move(v));
    CycleProfile c = extract_cycle(x, 7);
    ResidualSeries out = remove_cycle(x, c);
    CycleProfile after = extract_cycle(out, 7);
    double scale = *std::max_element(x.values.begin(), x.values.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
    for (double m : after.phase_means) CHECK(std::abs(m) < 1e-9 * std::abs(scale));
}

TEST_CASE("removal is idempotent") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(200);
    for (auto& e : v) e = dist(rng);
    ResidualSeries x = series(std::move(v));
    CycleProfile c = extract_cycle(x, 7);
    ResidualSeries once = remove_cycle(x, c);
    CycleProfile again = extract_cycle(once, 7);
    ResidualSeries twice = remove_cycle(once, again);
    for (std::size_t i = 0; i < once.values.size(); ++i)
        CHECK(twice.values[i] == doctest::Approx(once.values[i]).epsilon(1e-12));
}

TEST_CASE("removal never increases the variance") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(7000);
    for (auto& e : v) e = dist(rng);
    ResidualSeries x = series(std::move(v));
    CycleProfile c = extract_cycle(x, 7);
    ResidualSeries out = remove_cycle(x, c);
    CHECK(variance(out.values) <= variance(x.values) + 1e-12);
}

TEST_CASE("sequential removal sorts periods ascending") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(400);
    for (auto& e : v) e = dist(rng);
    auto [out, cs] = remove_cycles_sequential(series(std::move(v)), {45, 7, 30});
    REQUIRE(cs.profiles.size() == 3);
    CHECK(cs.profiles[0].period == 7);
    CHECK(cs.profiles[1].period == 30);
    CHECK(cs.profiles[2].period == 45);
    CHECK(out.values.size() == 400);
}

TEST_CASE("duplicate periods are an error") {
    ResidualSeries x = series(std::vector<double>(50, 0.0));
    CHECK_THROWS(remove_cycles_sequential(x, {7, 7}));
}

TEST_CASE("a sum of two exact cycles is removed completely") {
    // periods 3 and 5 over lcm multiples: residual should vanish
    std::size_t n = 15 * 8;
    std::vector<double> a{2, -1, -1};
    std::vector<double> b{1, 3, -2, 0, -2};
    std::vector<double> v(n);
    for (std::size_t t = 0; t < n; ++t) v[t] = a[t % 3] + b[t % 5];
    auto [out, cs] = remove_cycles_sequential(series(std::move(v)), {3, 5});
    for (double e : out.values) CHECK(std::abs(e) < 1e-9);
}

TEST_CASE("each removal step nulls the phase means of its own period") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> dist(0.0, 30000.0);
    std::vector<double> v(1034);
    for (auto& e : v) e = dist(rng);
    ResidualSeries x = series(std::move(v));
    double scale = 0;
    for (double e : x.values) scale = std::max(scale, std::abs(e));

    ResidualSeries cur = x;
    for (std::size_t period : {7u, 30u, 45u, 182u, 365u}) {
        CycleProfile c = extract_cycle(cur, period);
        cur = remove_cycle(cur, c);
        CycleProfile after = extract_cycle(cur, period);
        for (double m : after.phase_means) CHECK(std::abs(m) < 1e-9 * scale);
    }
    double mean = std::accumulate(cur.values.begin(), cur.values.end(), 0.0) /
                  static_cast<double>(cur.values.size());
    CHECK(std::abs(mean) < 1e-9 * scale);
}

TEST_CASE("cycle_value_at wraps phases past the training range") {
    CycleProfile c{3, {10, 20, 30}};
    CycleSet cs{{c}};
    CHECK(cycle_value_at(cs, 1) == doctest::Approx(10));
    CHECK(cycle_value_at(cs, 2) == doctest::Approx(20));
    CHECK(cycle_value_at(cs, 3) == doctest::Approx(30));
    CHECK(cycle_value_at(cs, 4) == doctest::Approx(10));
    CHECK(cycle_value_at(cs, 1 + 300) == doctest::Approx(10));
}

TEST_CASE("cycle_value_at of an empty set is zero") {
    CHECK(cycle_value_at(CycleSet{}, 17) == doctest::Approx(0.0));
}

TEST_CASE("removal and cycle_value_at are consistent") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(500);
    for (auto& e : v) e = dist(rng);
    ResidualSeries x = series(v);
    auto [out, cs] = remove_cycles_sequential(x, {7, 30});
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::int64_t t = x.origin_index + static_cast<std::int64_t>(i);
        CHECK(out.values[i] ==
              doctest::Approx(v[i] - cycle_value_at(cs, t)).epsilon(1e-12));
    }
}

TEST_CASE("summed cycle values repeat with the lcm period") {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(300);
    for (auto& e : v) e = dist(rng);
    auto [out, cs] = remove_cycles_sequential(series(std::move(v)), {4, 6});
    (void)out;
    for (std::int64_t t = 1; t <= 50; ++t)
        CHECK(cycle_value_at(cs, t) == doctest::Approx(cycle_value_at(cs, t + 12)).epsilon(1e-12));
}
