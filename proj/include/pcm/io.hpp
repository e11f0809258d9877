#ifndef PCM_IO_HPP
#define PCM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcm/grid.hpp"

namespace pcm {

// Grid description file; format documented in docs/formats.md.
GridSpec load_grid(const std::string& path);
void write_grid(const GridSpec& grid, const std::string& path);

// Raw timestamped CSV: first column ISO-8601 hour, remaining columns asset ids.
struct SeriesTable {
    std::string path;
    int64_t start_hour = 0;  // epoch hours; rows are contiguous from here
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // [hour][column]

    size_t hours() const { return rows.size(); }
    // Values for one column over [from, from + count) as an hourly vector.
    std::vector<double> slice(const std::string& column, int64_t from, size_t count) const;
};

SeriesTable load_series(const std::string& path);

// Conventional file names inside a data directory.
struct DataPaths {
    std::string load_forecast;
    std::string load_actual;
    std::string renewable_forecast;
    std::string renewable_actual;
    static DataPaths in_dir(const std::string& dir);
};

// Assembles one day's forecast (48 h) and actual (24+h) windows from the four
// series files, validated against the grid.
DayData load_day_data(const GridSpec& grid, const DataPaths& paths, const std::string& date,
                      int lookahead);

// Scenario CSV: leading scenario-index column, then the series layout.
// Expects exactly `expected_count` scenarios covering every load and renewable.
ScenarioSet load_scenarios(const GridSpec& grid, const std::string& path, size_t expected_count,
                           int lookahead);

// Synthetic Gaussian perturbations of the day's forecast, one value per asset
// and hour: forecast * max(0, 1 + eps), eps ~ N(0, rel_sigma^2). Deterministic
// for a fixed seed. Stand-in scenario source for pipelines without real ones.
ScenarioSet synth_scenarios(const DayData& day, size_t count, uint64_t seed, double rel_sigma);

// Writes an HourSeries in the series-file layout (used for adjusted capacity
// schedules, which feed back into commitment as a renewable forecast).
void write_capacity_series(const HourSeries& series, int64_t start_hour, const std::string& path);

}  // namespace pcm

#endif
