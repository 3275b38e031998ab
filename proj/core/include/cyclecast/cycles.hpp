#pragma once

#include <cstdint>
#include <vector>

#include "cyclecast/series.hpp"

namespace cyclecast {

/// Phase-mean profile of one cycle. Phases are anchored to the global time
/// index: phase(t) = (t - 1) mod period, so profiles extracted from training
/// data extend unchanged past the training range.
struct CycleProfile {
    std::size_t period = 0;
    std::vector<double> phase_means;  // length == period

    double value_at(std::int64_t t) const {
        return phase_means[static_cast<std::size_t>((t - 1) % static_cast<std::int64_t>(period))];
    }
};

/// Profiles in the exact order they were removed (ascending period).
struct CycleSet {
    std::vector<CycleProfile> profiles;
};

CycleProfile extract_cycle(const ResidualSeries& x, std::size_t period);

ResidualSeries remove_cycle(const ResidualSeries& x, const CycleProfile& c);

/// Remove the given periods shortest-first, re-extracting each profile from
/// the residuals left by the previous removals. Duplicate periods are an
/// error.
std::pair<ResidualSeries, CycleSet> remove_cycles_sequential(const ResidualSeries& x,
                                                             std::vector<std::size_t> periods);

/// Sum of all profile values at time index t (t >= 1, any range).
double cycle_value_at(const CycleSet& cs, std::int64_t t);

}  // namespace cyclecast
