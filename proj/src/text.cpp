#include "pcm/text.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "pcm/errors.hpp"

namespace pcm {

std::string fmt_double(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string fmt_fixed(double x, int digits) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
    return std::string(buf);
}

double parse_double(std::string_view s, const std::string& context) {
    s = trim(s);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw DataError(context + ": not a number: '" + std::string(s) + "'");
    return value;
}

long parse_long(std::string_view s, const std::string& context) {
    s = trim(s);
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw DataError(context + ": not an integer: '" + std::string(s) + "'");
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r'))
            ++i;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != ',' && line[i] != '\r')
            ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

namespace {

// Howard Hinnant's civil-date algorithm; locale and timezone free.
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t yy = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

int parse_int_at(std::string_view s, size_t pos, size_t len, const std::string& context) {
    if (pos + len > s.size()) throw DataError(context + ": bad timestamp '" + std::string(s) + "'");
    int v = 0;
    for (size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw DataError(context + ": bad timestamp '" + std::string(s) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

}  // namespace

int64_t parse_timestamp(std::string_view s, const std::string& context) {
    s = trim(s);
    // YYYY-MM-DDTHH:MM with optional :SS and optional trailing Z
    if (s.size() < 16 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':')
        throw DataError(context + ": bad timestamp '" + std::string(s) + "'");
    int y = parse_int_at(s, 0, 4, context);
    int mo = parse_int_at(s, 5, 2, context);
    int d = parse_int_at(s, 8, 2, context);
    int h = parse_int_at(s, 11, 2, context);
    int mi = parse_int_at(s, 14, 2, context);
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi != 0)
        throw DataError(context + ": timestamp not on an hour boundary: '" + std::string(s) + "'");
    return days_from_civil(y, mo, d) * 24 + h;
}

std::string format_timestamp(int64_t epoch_hours) {
    int64_t days = epoch_hours / 24;
    int hour = static_cast<int>(epoch_hours % 24);
    if (hour < 0) {
        hour += 24;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00", y, m, d, hour);
    return std::string(buf);
}

int64_t parse_date(std::string_view s, const std::string& context) {
    s = trim(s);
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        throw DataError(context + ": bad date '" + std::string(s) + "'");
    int y = parse_int_at(s, 0, 4, context);
    int mo = parse_int_at(s, 5, 2, context);
    int d = parse_int_at(s, 8, 2, context);
    if (mo < 1 || mo > 12 || d < 1 || d > 31)
        throw DataError(context + ": bad date '" + std::string(s) + "'");
    return days_from_civil(y, mo, d) * 24;
}

std::string format_date(int64_t epoch_hours) {
    int y, m, d;
    civil_from_days(epoch_hours / 24, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return std::string(buf);
}

}  // namespace pcm
