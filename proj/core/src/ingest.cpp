#include "cyclecast/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace cyclecast {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::int64_t parse_count(std::string_view s) {
    // Some source files carry counts as "1.0"; accept an integral double.
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && p == s.data() + s.size()) return v;
    double dv = 0;
    auto [pd, ecd] = std::from_chars(s.data(), s.data() + s.size(), dv);
    if (ecd != std::errc{} || pd != s.data() + s.size() || dv != static_cast<std::int64_t>(dv))
        throw std::invalid_argument("bad passenger count: '" + std::string(s) + "'");
    return static_cast<std::int64_t>(dv);
}

}  // namespace

Aggregator::Aggregator(DateWindow window, AggregateOptions opts)
    : window_(window), opts_(opts) {
    long span = days_between(window.from, window.to);
    if (span < 0) throw std::invalid_argument("empty date window");
    counts_.assign(static_cast<std::size_t>(span) + 1, 0);
}

void Aggregator::add(const TripRecord& rec) {
    if (rec.passenger_count < 0) throw std::invalid_argument("negative passenger count");
    long off = days_between(window_.from, rec.pickup_date);
    if (off < 0 || off >= static_cast<long>(counts_.size())) {
        ++stats_.skipped_out_of_window;
        return;
    }
    if (opts_.max_passenger_count && rec.passenger_count > *opts_.max_passenger_count) {
        ++stats_.skipped_filtered;
        return;
    }
    counts_[static_cast<std::size_t>(off)] += rec.passenger_count;
    ++stats_.accepted;
}

void Aggregator::add_unparseable() {
    if (opts_.strict) throw std::runtime_error("unparseable trip record (strict mode)");
    ++stats_.skipped_unparseable;
}

void Aggregator::consume_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty trip file");
    auto header = split_csv_line(line);
    auto find_col = [&](std::string_view name) -> std::ptrdiff_t {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };
    std::ptrdiff_t c_ts = find_col("tpep_pickup_datetime");
    std::ptrdiff_t c_pc = find_col("passenger_count");
    if (c_ts < 0 || c_pc < 0)
        throw std::runtime_error("trip file lacks tpep_pickup_datetime/passenger_count columns");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() <= static_cast<std::size_t>(std::max(c_ts, c_pc))) {
            add_unparseable();
            continue;
        }
        try {
            TripRecord rec;
            rec.pickup_date = parse_date(fields[static_cast<std::size_t>(c_ts)]);
            rec.passenger_count = parse_count(fields[static_cast<std::size_t>(c_pc)]);
            add(rec);
        } catch (const std::invalid_argument&) {
            add_unparseable();
        }
    }
}

void Aggregator::merge(const Aggregator& other) {
    if (days_between(window_.from, other.window_.from) != 0 ||
        counts_.size() != other.counts_.size())
        throw std::invalid_argument("cannot merge aggregators over different windows");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    stats_.accepted += other.stats_.accepted;
    stats_.skipped_out_of_window += other.stats_.skipped_out_of_window;
    stats_.skipped_unparseable += other.stats_.skipped_unparseable;
    stats_.skipped_filtered += other.stats_.skipped_filtered;
}

DailySeries Aggregator::finish() const {
    if (stats_.accepted == 0) throw std::runtime_error("no records fell inside the date window");
    return DailySeries{window_.from, counts_};
}

DailySeries aggregate_trips(const std::vector<TripRecord>& records, DateWindow window,
                            AggregateOptions opts) {
    Aggregator agg(window, opts);
    for (const auto& rec : records) agg.add(rec);
    return agg.finish();
}

SplitSeries split_train_test(const DailySeries& series, std::size_t holdout_days) {
    if (holdout_days >= series.size())
        throw std::invalid_argument("holdout_days must be smaller than the series length");
    std::size_t n_train = series.size() - holdout_days;
    SplitSeries out;
    out.train.start_date = series.start_date;
    out.train.counts.assign(series.counts.begin(),
                            series.counts.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.start_date = series.date_at(n_train);
    out.test.counts.assign(series.counts.begin() + static_cast<std::ptrdiff_t>(n_train),
                           series.counts.end());
    return out;
}

DailySeries read_daily_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty daily CSV");
    DailySeries out;
    bool first = true;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw std::runtime_error("daily CSV row " + std::to_string(row) +
                                     ": expected `date,passengers`");
        Date d = parse_date(fields[0]);
        std::int64_t c = parse_count(fields[1]);
        if (c < 0) throw std::runtime_error("daily CSV row " + std::to_string(row) +
                                            ": negative count");
        if (first) {
            out.start_date = d;
            first = false;
        } else {
            Date expect = out.date_at(out.counts.size());
            long delta = days_between(expect, d);
            if (delta > 0)
                throw std::runtime_error("daily CSV gap: missing " + format_date(expect));
            if (delta < 0)
                throw std::runtime_error(days_between(d, expect) == 0
                                             ? "daily CSV out of order"
                                             : "daily CSV duplicate or out-of-order date " +
                                                   format_date(d));
        }
        out.counts.push_back(c);
    }
    if (out.counts.empty()) throw std::runtime_error("daily CSV has no data rows");
    return out;
}

DailySeries read_daily_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_daily_csv(in);
}

void write_daily_csv(const DailySeries& series, std::ostream& out) {
    out << "date,passengers\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_date(series.date_at(i)) << ',' << series.counts[i] << '\n';
}

void write_daily_csv_file(const DailySeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_daily_csv(series, out);
}

CalendarReport calendar_aggregates(const DailySeries& series, std::size_t k) {
    if (series.counts.empty()) throw std::invalid_argument("empty series");
    CalendarReport rep;
    std::map<int, std::int64_t> yearly;
    std::map<unsigned, std::int64_t> monthly;
    std::map<unsigned, std::int64_t> weekday;
    std::vector<DatedCount> dated;
    dated.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        Date d = series.date_at(i);
        std::int64_t c = series.counts[i];
        yearly[int(d.year())] += c;
        monthly[unsigned(d.month())] += c;
        std::chrono::weekday wd{std::chrono::sys_days{d}};
        weekday[wd.iso_encoding()] += c;  // Mon=1 .. Sun=7
        dated.push_back({d, c});
        rep.grand_total += c;
    }
    rep.yearly.assign(yearly.begin(), yearly.end());
    rep.monthly.assign(monthly.begin(), monthly.end());
    rep.weekday.assign(weekday.begin(), weekday.end());

    auto by_count_then_date = [](const DatedCount& a, const DatedCount& b) {
        if (a.count != b.count) return a.count < b.count;
        return days_between(b.date, a.date) < 0;
    };
    std::vector<DatedCount> sorted = dated;
    std::sort(sorted.begin(), sorted.end(), by_count_then_date);
    std::size_t take = std::min(k, sorted.size());
    rep.bottom_dates.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(take));
    rep.top_dates.assign(sorted.rbegin(), sorted.rbegin() + static_cast<std::ptrdiff_t>(take));
    return rep;
}

}  // namespace cyclecast
