#include "cyclecast/cycles.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclecast {

CycleProfile extract_cycle(const ResidualSeries& x, std::size_t period) {
    if (period < 2) throw std::invalid_argument("cycle period must be at least 2");
    if (x.size() < period) throw std::invalid_argument("cycle period exceeds series length");
    CycleProfile c;
    c.period = period;
    c.phase_means.assign(period, 0.0);
    std::vector<std::size_t> counts(period, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t t = x.origin_index + static_cast<std::int64_t>(i);
        auto phase = static_cast<std::size_t>((t - 1) % static_cast<std::int64_t>(period));
        c.phase_means[phase] += x.values[i];
        ++counts[phase];
    }
    for (std::size_t p = 0; p < period; ++p)
        if (counts[p] > 0) c.phase_means[p] /= static_cast<double>(counts[p]);
    return c;
}

ResidualSeries remove_cycle(const ResidualSeries& x, const CycleProfile& c) {
    ResidualSeries out;
    out.origin_index = x.origin_index;
    out.values.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t t = x.origin_index + static_cast<std::int64_t>(i);
        out.values.push_back(x.values[i] - c.value_at(t));
    }
    return out;
}

std::pair<ResidualSeries, CycleSet> remove_cycles_sequential(const ResidualSeries& x,
                                                             std::vector<std::size_t> periods) {
    if (periods.empty()) throw std::invalid_argument("no cycle periods given");
    std::sort(periods.begin(), periods.end());
    if (std::adjacent_find(periods.begin(), periods.end()) != periods.end())
        throw std::invalid_argument("duplicate cycle periods");
    ResidualSeries current = x;
    CycleSet cs;
    for (std::size_t period : periods) {
        CycleProfile c = extract_cycle(current, period);
        current = remove_cycle(current, c);
        cs.profiles.push_back(std::move(c));
    }
    return {std::move(current), std::move(cs)};
}

double cycle_value_at(const CycleSet& cs, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("time index must be >= 1");
    double acc = 0;
    for (const auto& c : cs.profiles) acc += c.value_at(t);
    return acc;
}

}  // namespace cyclecast
