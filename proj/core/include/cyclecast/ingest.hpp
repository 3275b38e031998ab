#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclecast/series.hpp"

namespace cyclecast {

struct TripRecord {
    Date pickup_date{};
    std::int64_t passenger_count = 0;
};

struct DateWindow {
    Date from{};
    Date to{};  // inclusive
};

struct AggregateOptions {
    bool strict = false;  // abort on unparseable rows instead of skipping
    // Rows with passenger_count above this are skipped when set. The source
    // files contain driver-reported counts, occasionally implausible ones.
    std::optional<std::int64_t> max_passenger_count;
};

struct AggregateStats {
    std::uint64_t accepted = 0;
    std::uint64_t skipped_out_of_window = 0;
    std::uint64_t skipped_unparseable = 0;
    std::uint64_t skipped_filtered = 0;
};

class Aggregator {
public:
    Aggregator(DateWindow window, AggregateOptions opts = {});

    void add(const TripRecord& rec);
    void add_unparseable();

    /// Consume a trip-record CSV stream. The header row must name
    /// `tpep_pickup_datetime` and `passenger_count`; other columns are
    /// ignored. Throws in strict mode on bad rows.
    void consume_csv(std::istream& in);

    /// Merge counts from another aggregator over the same window.
    void merge(const Aggregator& other);

    /// Finish and return the daily series covering the whole window,
    /// zero-filled for days with no trips. Throws if no record fell inside
    /// the window.
    DailySeries finish() const;

    const AggregateStats& stats() const { return stats_; }

private:
    DateWindow window_;
    AggregateOptions opts_;
    AggregateStats stats_;
    std::vector<std::int64_t> counts_;  // one slot per window day
};

DailySeries aggregate_trips(const std::vector<TripRecord>& records, DateWindow window,
                            AggregateOptions opts = {});

/// Split off the last `holdout_days` entries. Throws if holdout_days >= n.
SplitSeries split_train_test(const DailySeries& series, std::size_t holdout_days);

/// Canonical fixture format: `date,passengers` CSV with a header row, one row
/// per consecutive day. Gaps and duplicate dates are errors.
DailySeries read_daily_csv(std::istream& in);
DailySeries read_daily_csv_file(const std::string& path);
void write_daily_csv(const DailySeries& series, std::ostream& out);
void write_daily_csv_file(const DailySeries& series, const std::string& path);

struct DatedCount {
    Date date{};
    std::int64_t count = 0;
};

struct CalendarReport {
    std::vector<std::pair<int, std::int64_t>> yearly;        // (year, total)
    std::vector<std::pair<unsigned, std::int64_t>> monthly;  // (month 1..12, total)
    std::vector<std::pair<unsigned, std::int64_t>> weekday;  // (weekday, Mon=1..Sun=7, total)
    std::vector<DatedCount> top_dates;                       // descending by count
    std::vector<DatedCount> bottom_dates;                    // ascending by count
    std::int64_t grand_total = 0;
};

CalendarReport calendar_aggregates(const DailySeries& series, std::size_t k = 10);

}  // namespace cyclecast
