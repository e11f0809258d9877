#include "pcm/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pcm/errors.hpp"
#include "pcm/rng.hpp"
#include "pcm/text.hpp"

namespace pcm {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

int column_of(const std::string& line, std::string_view field) {
    size_t pos = line.find(field.data(), 0, field.size());
    return pos == std::string::npos ? 1 : static_cast<int>(pos) + 1;
}

}  // namespace

GridSpec load_grid(const std::string& path) {
    const auto lines = read_lines(path);
    GridSpec grid;
    std::string section;
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        std::string_view raw = trim(lines[ln]);
        if (raw.empty() || raw.front() == '#') continue;
        const int lineno = static_cast<int>(ln) + 1;
        if (raw.front() == '[') {
            if (raw.back() != ']')
                throw ParseError(path, lineno, 1, "unterminated section header");
            section = std::string(raw.substr(1, raw.size() - 2));
            static const std::set<std::string> known = {"buses",      "lines", "generators",
                                                        "renewables", "loads", "penalties"};
            if (!known.count(section))
                throw ParseError(path, lineno, 1, "unknown section [" + section + "]");
            continue;
        }
        const auto f = split_fields(raw);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (section == "buses") {
            if (f.size() < 1 || f.size() > 2)
                throw ParseError(path, lineno, 1, "expected: id [name]");
            grid.buses.push_back({std::string(f[0]), f.size() > 1 ? std::string(f[1]) : ""});
        } else if (section == "lines") {
            if (f.size() < 2) throw ParseError(path, lineno, 1, "expected: id flow_limit bus:ptdf...");
            Line line;
            line.id = std::string(f[0]);
            line.flow_limit = parse_double(f[1], ctx);
            for (size_t i = 2; i < f.size(); ++i) {
                const auto colon = f[i].find(':');
                if (colon == std::string_view::npos)
                    throw ParseError(path, lineno, column_of(lines[ln], f[i]),
                                     "expected bus:ptdf pair, got '" + std::string(f[i]) + "'");
                line.ptdf[std::string(f[i].substr(0, colon))] =
                    parse_double(f[i].substr(colon + 1), ctx);
            }
            grid.lines.push_back(std::move(line));
        } else if (section == "generators") {
            if (f.size() != 11)
                throw ParseError(path, lineno, 1,
                                 "expected 11 columns: id bus p_min p_max ramp_up ramp_down "
                                 "marginal_cost no_load_cost min_up min_down must_run");
            DispatchableGen g;
            g.id = std::string(f[0]);
            g.bus = std::string(f[1]);
            g.p_min = parse_double(f[2], ctx);
            g.p_max = parse_double(f[3], ctx);
            g.ramp_up = parse_double(f[4], ctx);
            g.ramp_down = parse_double(f[5], ctx);
            g.marginal_cost = parse_double(f[6], ctx);
            g.no_load_cost = parse_double(f[7], ctx);
            g.min_up = static_cast<int>(parse_long(f[8], ctx));
            g.min_down = static_cast<int>(parse_long(f[9], ctx));
            g.must_run = parse_long(f[10], ctx) != 0;
            grid.dispatchables.push_back(std::move(g));
        } else if (section == "renewables") {
            if (f.size() != 3) throw ParseError(path, lineno, 1, "expected: id bus kind");
            RenewableGen r;
            r.id = std::string(f[0]);
            r.bus = std::string(f[1]);
            if (f[2] == "wind")
                r.kind = RenewableGen::Kind::Wind;
            else if (f[2] == "solar")
                r.kind = RenewableGen::Kind::Solar;
            else
                throw ParseError(path, lineno, column_of(lines[ln], f[2]),
                                 "renewable kind must be wind or solar");
            grid.renewables.push_back(std::move(r));
        } else if (section == "loads") {
            if (f.size() != 2) throw ParseError(path, lineno, 1, "expected: id bus");
            grid.loads.push_back({std::string(f[0]), std::string(f[1])});
        } else if (section == "penalties") {
            if (f.size() != 2) throw ParseError(path, lineno, 1, "expected: key value");
            const double v = parse_double(f[1], ctx);
            if (f[0] == "load_mismatch")
                grid.penalties.load_mismatch = v;
            else if (f[0] == "reserve_shortfall")
                grid.penalties.reserve_shortfall = v;
            else if (f[0] == "reserve_factor")
                grid.reserve_factor = v;
            else
                throw ParseError(path, lineno, 1, "unknown penalties key '" + std::string(f[0]) + "'");
        } else {
            throw ParseError(path, lineno, 1, "data before any section header");
        }
    }
    grid.validate();
    return grid;
}

void write_grid(const GridSpec& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "[buses]\n";
    for (const auto& b : grid.buses) {
        out << b.id;
        if (!b.name.empty()) out << " " << b.name;
        out << "\n";
    }
    out << "\n[lines]\n";
    for (const auto& l : grid.lines) {
        out << l.id << " " << fmt_double(l.flow_limit);
        for (const auto& [bus, v] : l.ptdf) out << " " << bus << ":" << fmt_double(v);
        out << "\n";
    }
    out << "\n[generators]\n";
    for (const auto& g : grid.dispatchables) {
        out << g.id << " " << g.bus << " " << fmt_double(g.p_min) << " " << fmt_double(g.p_max)
            << " " << fmt_double(g.ramp_up) << " " << fmt_double(g.ramp_down) << " "
            << fmt_double(g.marginal_cost) << " " << fmt_double(g.no_load_cost) << " " << g.min_up
            << " " << g.min_down << " " << (g.must_run ? 1 : 0) << "\n";
    }
    out << "\n[renewables]\n";
    for (const auto& r : grid.renewables)
        out << r.id << " " << r.bus << " "
            << (r.kind == RenewableGen::Kind::Wind ? "wind" : "solar") << "\n";
    out << "\n[loads]\n";
    for (const auto& l : grid.loads) out << l.id << " " << l.bus << "\n";
    out << "\n[penalties]\n";
    out << "load_mismatch " << fmt_double(grid.penalties.load_mismatch) << "\n";
    out << "reserve_shortfall " << fmt_double(grid.penalties.reserve_shortfall) << "\n";
    out << "reserve_factor " << fmt_double(grid.reserve_factor) << "\n";
}

SeriesTable load_series(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw ParseError(path, 1, 1, "empty series file");
    SeriesTable table;
    table.path = path;
    const auto header = split_csv(lines[0]);
    if (header.size() < 2 || trim(header[0]) != "timestamp")
        throw ParseError(path, 1, 1, "header must be: timestamp,<asset ids...>");
    for (size_t i = 1; i < header.size(); ++i) {
        if (header[i].empty()) throw ParseError(path, 1, 1, "empty column name in header");
        table.columns.emplace_back(header[i]);
    }
    int64_t expected = 0;
    for (size_t ln = 1; ln < lines.size(); ++ln) {
        if (trim(lines[ln]).empty()) continue;
        const int lineno = static_cast<int>(ln) + 1;
        const auto f = split_csv(lines[ln]);
        if (f.size() != header.size())
            throw ParseError(path, lineno, 1,
                             "expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(f.size()));
        const std::string ctx = path + ":" + std::to_string(lineno);
        const int64_t hour = parse_timestamp(f[0], ctx);
        if (table.rows.empty()) {
            table.start_hour = hour;
        } else if (hour != expected) {
            throw ParseError(path, lineno, 1,
                             "missing hour: expected " + format_timestamp(expected) + ", got " +
                                 format_timestamp(hour));
        }
        expected = hour + 1;
        std::vector<double> row;
        row.reserve(table.columns.size());
        for (size_t i = 1; i < f.size(); ++i) row.push_back(parse_double(f[i], ctx));
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw ParseError(path, 1, 1, "series file has no data rows");
    return table;
}

std::vector<double> SeriesTable::slice(const std::string& column, int64_t from, size_t count) const {
    const auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end())
        throw DataError(path + ": no column for asset '" + column + "'");
    const size_t col = static_cast<size_t>(it - columns.begin());
    if (from < start_hour || from + static_cast<int64_t>(count) > start_hour + static_cast<int64_t>(rows.size()))
        throw DataError(path + ": series too short: need " + std::to_string(count) + " hours from " +
                        format_timestamp(from) + ", have " + format_timestamp(start_hour) + " + " +
                        std::to_string(rows.size()) + " hours");
    std::vector<double> out(count);
    for (size_t t = 0; t < count; ++t) out[t] = rows[from - start_hour + t][col];
    return out;
}

DataPaths DataPaths::in_dir(const std::string& dir) {
    const std::string base = dir.empty() || dir.back() == '/' ? dir : dir + "/";
    return {base + "load_forecast.csv", base + "load_actual.csv",
            base + "renewable_forecast.csv", base + "renewable_actual.csv"};
}

DayData load_day_data(const GridSpec& grid, const DataPaths& paths, const std::string& date,
                      int lookahead) {
    const int64_t day0 = parse_date(date, "load_day_data");
    const size_t actual_hours = 24 + static_cast<size_t>(lookahead);

    const auto lf = load_series(paths.load_forecast);
    const auto la = load_series(paths.load_actual);
    const auto rf = load_series(paths.renewable_forecast);
    const auto ra = load_series(paths.renewable_actual);

    DayData day;
    day.date = date;
    for (const auto& load : grid.loads) {
        day.forecast.demand[load.id] = lf.slice(load.id, day0, 48);
        day.actual.demand[load.id] = la.slice(load.id, day0, actual_hours);
    }
    for (const auto& ren : grid.renewables) {
        day.forecast.capacity[ren.id] = rf.slice(ren.id, day0, 48);
        day.actual.capacity[ren.id] = ra.slice(ren.id, day0, actual_hours);
    }
    validate_day(grid, day, lookahead);
    return day;
}

ScenarioSet load_scenarios(const GridSpec& grid, const std::string& path, size_t expected_count,
                           int lookahead) {
    if (expected_count == 0) throw DataError("empty scenario set: K must be positive");
    const auto lines = read_lines(path);
    if (lines.empty()) throw ParseError(path, 1, 1, "empty scenario file");
    const auto header = split_csv(lines[0]);
    if (header.size() < 3 || trim(header[0]) != "scenario" || trim(header[1]) != "timestamp")
        throw ParseError(path, 1, 1, "header must be: scenario,timestamp,<asset ids...>");

    std::set<std::string> load_ids, renew_ids;
    for (const auto& l : grid.loads) load_ids.insert(l.id);
    for (const auto& r : grid.renewables) renew_ids.insert(r.id);

    struct Column {
        std::string id;
        bool is_load;
    };
    std::vector<Column> cols;
    for (size_t i = 2; i < header.size(); ++i) {
        const std::string id(header[i]);
        if (load_ids.count(id))
            cols.push_back({id, true});
        else if (renew_ids.count(id))
            cols.push_back({id, false});
        else
            throw ParseError(path, 1, 1, "column '" + id + "' matches no load or renewable");
    }

    ScenarioSet set;
    set.scenarios.resize(expected_count);
    std::vector<int64_t> next_hour(expected_count, -1);
    for (size_t ln = 1; ln < lines.size(); ++ln) {
        if (trim(lines[ln]).empty()) continue;
        const int lineno = static_cast<int>(ln) + 1;
        const std::string ctx = path + ":" + std::to_string(lineno);
        const auto f = split_csv(lines[ln]);
        if (f.size() != header.size())
            throw ParseError(path, lineno, 1, "row width does not match header");
        const long j = parse_long(f[0], ctx);
        if (j < 0 || static_cast<size_t>(j) >= expected_count)
            throw ParseError(path, lineno, 1,
                             "scenario index " + std::to_string(j) + " outside 0.." +
                                 std::to_string(expected_count - 1));
        const int64_t hour = parse_timestamp(f[1], ctx);
        if (next_hour[j] >= 0 && hour != next_hour[j])
            throw ParseError(path, lineno, 1,
                             "scenario " + std::to_string(j) + ": missing hour " +
                                 format_timestamp(next_hour[j]));
        next_hour[j] = hour + 1;
        auto& series = set.scenarios[j];
        for (size_t c = 0; c < cols.size(); ++c) {
            const double v = parse_double(f[c + 2], ctx);
            auto& dest = cols[c].is_load ? series.demand[cols[c].id] : series.capacity[cols[c].id];
            dest.push_back(v);
        }
    }
    for (size_t j = 0; j < expected_count; ++j)
        if (next_hour[j] < 0)
            throw DataError(path + ": scenario " + std::to_string(j) + " has no rows");
    validate_scenarios(grid, set, lookahead);
    return set;
}

ScenarioSet synth_scenarios(const DayData& day, size_t count, uint64_t seed, double rel_sigma) {
    if (rel_sigma < 0) throw ConfigError("synth_scenarios: rel_sigma must be >= 0");
    if (count == 0) throw ConfigError("synth_scenarios: K must be positive");
    const size_t hours = day.actual.hours() > 0 ? day.actual.hours() : 24;

    Rng rng(seed);
    ScenarioSet set;
    set.scenarios.resize(count);
    // Draw order is part of the determinism contract: scenarios outermost,
    // then loads in id order, then renewables in id order, hours innermost.
    for (size_t j = 0; j < count; ++j) {
        auto& s = set.scenarios[j];
        for (const auto& [id, fc] : day.forecast.demand) {
            auto& v = s.demand[id];
            v.resize(hours);
            for (size_t t = 0; t < hours; ++t)
                v[t] = fc[t] * std::max(0.0, 1.0 + rng.normal(0.0, rel_sigma));
        }
        for (const auto& [id, fc] : day.forecast.capacity) {
            auto& v = s.capacity[id];
            v.resize(hours);
            for (size_t t = 0; t < hours; ++t)
                v[t] = fc[t] * std::max(0.0, 1.0 + rng.normal(0.0, rel_sigma));
        }
    }
    return set;
}

void write_capacity_series(const HourSeries& series, int64_t start_hour, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "timestamp";
    for (const auto& [id, v] : series.capacity) out << "," << id;
    out << "\n";
    const size_t hours = series.hours();
    for (size_t t = 0; t < hours; ++t) {
        out << format_timestamp(start_hour + static_cast<int64_t>(t));
        for (const auto& [id, v] : series.capacity) out << "," << fmt_double(v[t]);
        out << "\n";
    }
}

}  // namespace pcm
