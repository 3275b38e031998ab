#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cyclecast/series.hpp"

namespace cyclecast {

enum class SpectralEstimator { RawPeriodogram, Daniell, AutoRegressive };

struct SpectralDensity {
    std::vector<double> frequencies;  // cycles/day, strictly increasing in (0, 0.5]
    std::vector<double> power;        // same length, all >= 0
    SpectralEstimator estimator = SpectralEstimator::RawPeriodogram;
    std::size_t param = 0;  // Daniell span or selected AR order

    std::size_t size() const { return frequencies.size(); }
};

std::string estimator_label(const SpectralDensity& s);

/// Raw periodogram at Fourier frequencies j/n, j = 1..floor(n/2). The series
/// is mean-centered before the transform; ordinates are I(f_j) = |X_j|^2 / n.
///
/// Parseval: sum_t (x_t - xbar)^2 = 2 * sum_{j<n/2} I_j + [n even] * I_{n/2}
/// (the j and n-j ordinates coincide, and the j = n/2 bin, when present, has
/// no mirror). periodogram_total_power() evaluates the right-hand side.
SpectralDensity periodogram(std::span<const double> x);
SpectralDensity periodogram(const ResidualSeries& x);

double periodogram_total_power(const SpectralDensity& s, std::size_t n);

/// Moving-average smoothing of periodogram ordinates with an odd span;
/// edges use symmetric (edge-inclusive reflection) padding.
SpectralDensity daniell_smooth(const SpectralDensity& s, std::size_t span);

/// Yule-Walker AR(k) fit: coefficients and innovation variance from the
/// biased autocovariance sequence.
struct YuleWalkerFit {
    std::vector<double> phi;
    double sigma2 = 0;
};

YuleWalkerFit yule_walker(std::span<const double> x, std::size_t order);

/// AR spectral density: Yule-Walker fits for k = 0..max_order, order chosen
/// by AIC, density sigma^2 / |1 - sum phi_j e^{-2 pi i f j}|^2 on the same
/// frequency grid the periodogram of x would use.
SpectralDensity ar_spectrum(std::span<const double> x, std::size_t max_order);
SpectralDensity ar_spectrum(const ResidualSeries& x, std::size_t max_order);

struct SpectralPeak {
    std::size_t period = 0;  // round(1 / frequency), days
    double frequency = 0;
    double power = 0;
};

using PeakSet = std::vector<SpectralPeak>;  // sorted by power descending

/// Greedy selection of up to k local maxima in descending power, each at
/// least min_separation away in frequency from all previously accepted
/// peaks and distinct in rounded period. Returns fewer than k when the
/// spectrum has fewer qualifying maxima.
PeakSet dominant_periods(const SpectralDensity& s, std::size_t k, double min_separation);

}  // namespace cyclecast
