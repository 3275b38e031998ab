#include "cyclecast/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "cyclecast/stats.hpp"

namespace cyclecast {

std::string estimator_label(const SpectralDensity& s) {
    switch (s.estimator) {
        case SpectralEstimator::RawPeriodogram: return "raw";
        case SpectralEstimator::Daniell: return "daniell(" + std::to_string(s.param) + ")";
        case SpectralEstimator::AutoRegressive: return "ar(" + std::to_string(s.param) + ")";
    }
    return "?";
}

SpectralDensity periodogram(std::span<const double> x) {
    std::size_t n = x.size();
    if (n < 8) throw std::invalid_argument("periodogram needs at least 8 observations");
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    std::size_t m = n / 2;
    SpectralDensity out;
    out.estimator = SpectralEstimator::RawPeriodogram;
    out.frequencies.resize(m);
    out.power.resize(m);
    for (std::size_t j = 1; j <= m; ++j) {
        double f = static_cast<double>(j) / static_cast<double>(n);
        double re = 0, im = 0;
        for (std::size_t t = 0; t < n; ++t) {
            double ang = -2.0 * std::numbers::pi * f * static_cast<double>(t + 1);
            double v = x[t] - mean;
            re += v * std::cos(ang);
            im += v * std::sin(ang);
        }
        out.frequencies[j - 1] = f;
        out.power[j - 1] = (re * re + im * im) / static_cast<double>(n);
    }
    return out;
}

SpectralDensity periodogram(const ResidualSeries& x) {
    return periodogram(std::span<const double>(x.values));
}

double periodogram_total_power(const SpectralDensity& s, std::size_t n) {
    double total = 0;
    std::size_t m = s.size();
    for (std::size_t i = 0; i < m; ++i) {
        bool nyquist = (n % 2 == 0) && (i == m - 1);
        total += (nyquist ? 1.0 : 2.0) * s.power[i];
    }
    return total;
}

SpectralDensity daniell_smooth(const SpectralDensity& s, std::size_t span) {
    if (span % 2 == 0) throw std::invalid_argument("Daniell span must be odd");
    if (span > s.size()) throw std::invalid_argument("Daniell span exceeds spectrum length");
    std::size_t m = s.size();
    std::size_t half = span / 2;
    SpectralDensity out = s;
    out.estimator = SpectralEstimator::Daniell;
    out.param = span;
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0;
        for (std::ptrdiff_t d = -static_cast<std::ptrdiff_t>(half);
             d <= static_cast<std::ptrdiff_t>(half); ++d) {
            std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + d;
            // symmetric padding: ..., s[1], s[0] | s[0], s[1], ...
            if (j < 0) j = -j - 1;
            if (j >= static_cast<std::ptrdiff_t>(m))
                j = 2 * static_cast<std::ptrdiff_t>(m) - j - 1;
            acc += s.power[static_cast<std::size_t>(j)];
        }
        out.power[i] = acc / static_cast<double>(span);
    }
    return out;
}

YuleWalkerFit yule_walker(std::span<const double> x, std::size_t order) {
    std::size_t n = x.size();
    if (n <= order) throw std::invalid_argument("Yule-Walker order must be below series length");
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    std::vector<double> gamma(order + 1, 0.0);  // biased autocovariances
    for (std::size_t h = 0; h <= order; ++h) {
        double acc = 0;
        for (std::size_t t = 0; t + h < n; ++t) acc += (x[t] - mean) * (x[t + h] - mean);
        gamma[h] = acc / static_cast<double>(n);
    }
    if (gamma[0] <= 0) throw std::invalid_argument("zero-variance series");

    // Levinson recursion on the autocovariances.
    YuleWalkerFit fit;
    fit.sigma2 = gamma[0];
    if (order == 0) return fit;
    std::vector<double> phi(order + 1, 0.0), prev(order + 1, 0.0);
    double v = gamma[0];
    for (std::size_t k = 1; k <= order; ++k) {
        double num = gamma[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * gamma[k - j];
        if (v <= 0) throw std::runtime_error("Yule-Walker system is singular");
        double a = num / v;
        phi[k] = a;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - a * prev[k - j];
        v *= (1.0 - a * a);
        prev = phi;
    }
    fit.phi.assign(phi.begin() + 1, phi.end());
    fit.sigma2 = v;
    return fit;
}

SpectralDensity ar_spectrum(std::span<const double> x, std::size_t max_order) {
    std::size_t n = x.size();
    if (n <= max_order) throw std::invalid_argument("max_order must be below series length");

    std::size_t best_order = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    YuleWalkerFit best;
    for (std::size_t k = 0; k <= max_order; ++k) {
        YuleWalkerFit fit = yule_walker(x, k);
        if (fit.sigma2 <= 0) continue;
        double aic = static_cast<double>(n) * std::log(fit.sigma2) + 2.0 * static_cast<double>(k);
        if (aic < best_aic) {
            best_aic = aic;
            best_order = k;
            best = fit;
        }
    }

    SpectralDensity out;
    out.estimator = SpectralEstimator::AutoRegressive;
    out.param = best_order;
    std::size_t m = n / 2;
    out.frequencies.resize(m);
    out.power.resize(m);
    for (std::size_t j = 1; j <= m; ++j) {
        double f = static_cast<double>(j) / static_cast<double>(n);
        double re = 1, im = 0;
        for (std::size_t i = 0; i < best.phi.size(); ++i) {
            double ang = -2.0 * std::numbers::pi * f * static_cast<double>(i + 1);
            re -= best.phi[i] * std::cos(ang);
            im -= best.phi[i] * std::sin(ang);
        }
        out.frequencies[j - 1] = f;
        out.power[j - 1] = best.sigma2 / (re * re + im * im);
    }
    return out;
}

SpectralDensity ar_spectrum(const ResidualSeries& x, std::size_t max_order) {
    return ar_spectrum(std::span<const double>(x.values), max_order);
}

PeakSet dominant_periods(const SpectralDensity& s, std::size_t k, double min_separation) {
    if (s.size() == 0) throw std::invalid_argument("empty spectrum");
    std::size_t m = s.size();
    // interior maxima only: a monotone run toward the boundary is not a peak
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < m; ++i)
        if (s.power[i] > s.power[i - 1] && s.power[i] > s.power[i + 1]) maxima.push_back(i);
    std::sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) {
        if (s.power[a] != s.power[b]) return s.power[a] > s.power[b];
        return a < b;
    });
    PeakSet peaks;
    for (std::size_t i : maxima) {
        if (peaks.size() >= k) break;
        double f = s.frequencies[i];
        std::size_t period = static_cast<std::size_t>(std::llround(1.0 / f));
        bool ok = true;
        for (const auto& p : peaks) {
            if (std::abs(p.frequency - f) < min_separation || p.period == period) {
                ok = false;
                break;
            }
        }
        if (ok) peaks.push_back({period, f, s.power[i]});
    }
    return peaks;
}

}  // namespace cyclecast
