#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclecast {

using Date = std::chrono::year_month_day;

/// Parse an ISO-8601 calendar date (YYYY-MM-DD). Throws std::invalid_argument
/// on malformed or non-existent dates.
Date parse_date(std::string_view text);

std::string format_date(const Date& d);

/// Days between two calendar dates (b - a).
inline long days_between(const Date& a, const Date& b) {
    using namespace std::chrono;
    return (sys_days{b} - sys_days{a}).count();
}

inline Date add_days(const Date& d, long n) {
    using namespace std::chrono;
    return year_month_day{sys_days{d} + days{n}};
}

/// Contiguous daily count series. counts[i] belongs to start_date + i days;
/// the time index convention downstream is t = 1 for the first day.
struct DailySeries {
    Date start_date{};
    std::vector<std::int64_t> counts;

    std::size_t size() const { return counts.size(); }
    Date date_at(std::size_t i) const { return add_days(start_date, static_cast<long>(i)); }
    Date end_date() const {
        if (counts.empty()) throw std::logic_error("empty DailySeries has no end date");
        return date_at(counts.size() - 1);
    }
};

struct SplitSeries {
    DailySeries train;
    DailySeries test;
};

/// Real-valued residual series anchored to the time index of the series it
/// was derived from: values[i] corresponds to t = origin_index + i.
struct ResidualSeries {
    std::vector<double> values;
    std::int64_t origin_index = 1;

    std::size_t size() const { return values.size(); }
};

}  // namespace cyclecast
