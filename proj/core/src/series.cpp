#include "cyclecast/series.hpp"

#include <cstdio>

namespace cyclecast {

Date parse_date(std::string_view text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = '\0';
    std::string buf(text);
    int matched = std::sscanf(buf.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail);
    if (matched < 3 || (matched == 4 && tail != ' ' && tail != 'T'))
        throw std::invalid_argument("not an ISO date: '" + buf + "'");
    Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) throw std::invalid_argument("invalid calendar date: '" + buf + "'");
    return date;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(d.year()), unsigned(d.month()),
                  unsigned(d.day()));
    return buf;
}

}  // namespace cyclecast
