#ifndef PCM_TEXT_HPP
#define PCM_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pcm {

// Shortest decimal representation that round-trips the exact double.
// Every output file goes through this so identical runs emit identical bytes.
std::string fmt_double(double x);

// Fixed-precision form for report tables.
std::string fmt_fixed(double x, int digits);

double parse_double(std::string_view s, const std::string& context);
long parse_long(std::string_view s, const std::string& context);

std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

// Splits on commas and/or runs of whitespace; empty fields are dropped.
std::vector<std::string_view> split_fields(std::string_view line);

// Splits a CSV line on commas only (fields may be empty).
std::vector<std::string_view> split_csv(std::string_view line);

// ISO-8601 hour timestamps ("2020-07-08T05:00", optional seconds) mapped to
// hours since the civil epoch 1970-01-01T00:00.
int64_t parse_timestamp(std::string_view s, const std::string& context);
std::string format_timestamp(int64_t epoch_hours);

// "YYYY-MM-DD" to the epoch hour of that day's 00:00.
int64_t parse_date(std::string_view s, const std::string& context);
std::string format_date(int64_t epoch_hours);

}  // namespace pcm

#endif
