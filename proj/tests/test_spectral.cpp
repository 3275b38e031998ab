#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "cyclecast/spectral.hpp"

using namespace cyclecast;

namespace {

std::vector<double> tone(std::size_t n, double period, double amp = 1.0) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = amp * std::cos(2.0 * std::numbers::pi * static_cast<double>(t + 1) / period);
    return x;
}

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = dist(rng);
    return x;
}

double centered_ssq(std::span<const double> x) {
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double ssq = 0;
    for (double v : x) ssq += (v - mean) * (v - mean);
    return ssq;
}

}  // namespace

TEST_CASE("a pure Fourier tone produces a single spike") {
    std::vector<double> x = tone(64, 8.0);
    SpectralDensity s = periodogram(x);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s.power[i] > s.power[peak]) peak = i;
    CHECK(s.frequencies[peak] == doctest::Approx(1.0 / 8.0));
    for (std::size_t i = 0; i < s.size(); ++i)
        if (i != peak) CHECK(s.power[i] < 1e-9 * s.power[peak]);
}

TEST_CASE("Parseval: ordinates reconstruct the centered sum of squares") {
    for (std::size_t n : {64u, 65u, 100u, 257u}) {
        std::vector<double> x = noise(n, 100 + n);
        SpectralDensity s = periodogram(x);
        CHECK(periodogram_total_power(s, n) ==
              doctest::Approx(centered_ssq(x)).epsilon(1e-9));
    }
}

TEST_CASE("white-noise mean ordinate approximates the variance") {
    std::size_t n = 1024;
    std::vector<double> x = noise(n, 5);
    SpectralDensity s = periodogram(x);
    double mean_ord = std::accumulate(s.power.begin(), s.power.end(), 0.0) /
                      static_cast<double>(s.size());
    double var = centered_ssq(x) / static_cast<double>(n);
    CHECK(mean_ord == doctest::Approx(var).epsilon(0.10));
}

TEST_CASE("two tones give two dominant ordinates") {
    std::size_t n = 7 * 365;
    std::vector<double> x = tone(n, 7.0, 2.0);
    std::vector<double> y = tone(n, 365.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) x[i] += y[i];
    SpectralDensity s = periodogram(x);
    PeakSet peaks = dominant_periods(s, 2, 2.0 / static_cast<double>(n));
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].period == 7);
    CHECK(peaks[1].period == 365);
}

TEST_CASE("periodogram needs at least 8 points") {
    std::vector<double> x(7, 1.0);
    CHECK_THROWS(periodogram(std::span<const double>(x)));
}

TEST_CASE("Daniell smoothing leaves a constant spectrum unchanged") {
    SpectralDensity s;
    s.frequencies = {0.1, 0.2, 0.3, 0.4, 0.5};
    s.power = {2, 2, 2, 2, 2};
    SpectralDensity out = daniell_smooth(s, 3);
    for (double v : out.power) CHECK(v == doctest::Approx(2.0));
}

TEST_CASE("Daniell span 3 with symmetric edge padding, by hand") {
    SpectralDensity s;
    s.power = {0, 3, 0, 0, 0, 0};
    s.frequencies = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
    SpectralDensity out = daniell_smooth(s, 3);
    CHECK(out.power[0] == doctest::Approx(1.0));
    CHECK(out.power[1] == doctest::Approx(1.0));
    CHECK(out.power[2] == doctest::Approx(1.0));
    CHECK(out.power[3] == doctest::Approx(0.0));
}

TEST_CASE("Daniell span 1 is the identity and even spans are rejected") {
    std::vector<double> x = noise(64, 9);
    SpectralDensity s = periodogram(x);
    SpectralDensity out = daniell_smooth(s, 1);
    CHECK(out.power == s.power);
    CHECK_THROWS(daniell_smooth(s, 4));
}

TEST_CASE("Daniell smoothing approximately preserves total power") {
    std::vector<double> x = noise(256, 21);
    SpectralDensity s = periodogram(x);
    SpectralDensity out = daniell_smooth(s, 3);
    double before = std::accumulate(s.power.begin(), s.power.end(), 0.0);
    double after = std::accumulate(out.power.begin(), out.power.end(), 0.0);
    CHECK(after == doctest::Approx(before).epsilon(0.01));
    for (double v : out.power) CHECK(v >= 0.0);
}

TEST_CASE("AR spectrum of white noise is nearly flat") {
    std::vector<double> x = noise(2048, 3);
    SpectralDensity s = ar_spectrum(x, 20);
    CHECK(s.param <= 1);
    double lo = *std::min_element(s.power.begin(), s.power.end());
    double hi = *std::max_element(s.power.begin(), s.power.end());
    CHECK(hi / lo < 2.0);
}

TEST_CASE("AR(2) resonance lands at the analytic frequency") {
    // complex-root AR(2): peak at arccos(phi1 (1 - phi2) / (4 (-phi2))) / 2 pi
    double phi1 = 1.0, phi2 = -0.9;
    std::mt19937_64 rng(77);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::size_t n = 4096;
    std::vector<double> x(n, 0.0);
    for (std::size_t t = 2; t < n; ++t)
        x[t] = phi1 * x[t - 1] + phi2 * x[t - 2] + dist(rng);
    SpectralDensity s = ar_spectrum(x, 20);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s.power[i] > s.power[peak]) peak = i;
    double expected =
        std::acos(phi1 * (1.0 - phi2) / (4.0 * (-phi2))) / (2.0 * std::numbers::pi);
    // sampling error in the fitted coefficients moves the peak a few grid
    // steps; 0.005 cycles/day is ~5 sigma for this n
    CHECK(std::abs(s.frequencies[peak] - expected) < 0.005);
}

TEST_CASE("AR spectral density is strictly positive") {
    double phi1 = 1.0, phi2 = -0.9;
    std::mt19937_64 rng(91);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> x(512, 0.0);
    for (std::size_t t = 2; t < x.size(); ++t)
        x[t] = phi1 * x[t - 1] + phi2 * x[t - 2] + dist(rng);
    SpectralDensity s = ar_spectrum(x, 10);
    for (double v : s.power) CHECK(v > 0.0);
}

TEST_CASE("dominant_periods is scale invariant and respects separation") {
    std::size_t n = 7 * 30;
    std::vector<double> x = tone(n, 7.0, 3.0);
    std::vector<double> y = tone(n, 30.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) x[i] += y[i];
    SpectralDensity s = periodogram(x);
    PeakSet a = dominant_periods(s, 2, 2.0 / static_cast<double>(n));
    SpectralDensity scaled = s;
    for (double& v : scaled.power) v *= 1234.5;
    PeakSet b = dominant_periods(scaled, 2, 2.0 / static_cast<double>(n));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].period == b[i].period);
    CHECK(a[0].period == 7);
    CHECK(a[1].period == 30);
}

TEST_CASE("a monotone spectrum yields no interior maxima") {
    SpectralDensity s;
    for (int i = 1; i <= 20; ++i) {
        s.frequencies.push_back(i / 40.0);
        s.power.push_back(static_cast<double>(i));
    }
    PeakSet peaks = dominant_periods(s, 5, 0.01);
    CHECK(peaks.empty());
}
