#ifndef PCM_GRID_HPP
#define PCM_GRID_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pcm {

struct Bus {
    std::string id;
    std::string name;
    bool operator==(const Bus&) const = default;
};

struct Line {
    std::string id;
    double flow_limit = 0.0;              // MW, applies in both directions
    std::map<std::string, double> ptdf;   // bus id -> flow sensitivity; missing entries read as 0
    bool operator==(const Line&) const = default;

    double ptdf_at(const std::string& bus) const {
        auto it = ptdf.find(bus);
        return it == ptdf.end() ? 0.0 : it->second;
    }
};

struct DispatchableGen {
    std::string id;
    std::string bus;
    double p_min = 0.0;          // MW
    double p_max = 0.0;          // MW
    double ramp_up = 0.0;        // MW/h
    double ramp_down = 0.0;      // MW/h
    double marginal_cost = 0.0;  // $/MWh
    double no_load_cost = 0.0;   // $/h while committed
    int min_up = 1;              // h
    int min_down = 1;            // h
    bool must_run = false;
    bool operator==(const DispatchableGen&) const = default;
};

struct RenewableGen {
    enum class Kind { Wind, Solar };
    std::string id;
    std::string bus;
    Kind kind = Kind::Wind;
    bool operator==(const RenewableGen&) const = default;
};

struct LoadAsset {
    std::string id;
    std::string bus;
    bool operator==(const LoadAsset&) const = default;
};

struct PenaltyConfig {
    double load_mismatch = 10000.0;      // $/MWh, shed and over-generation alike
    double reserve_shortfall = 1000.0;   // $/MWh
    bool operator==(const PenaltyConfig&) const = default;
};

// Immutable grid description. Validate after construction; safe to share
// across concurrent workers afterwards.
struct GridSpec {
    std::vector<Bus> buses;
    std::vector<Line> lines;
    std::vector<DispatchableGen> dispatchables;
    std::vector<RenewableGen> renewables;
    std::vector<LoadAsset> loads;
    PenaltyConfig penalties;
    double reserve_factor = 0.05;  // fraction of forecast system demand

    bool operator==(const GridSpec&) const = default;

    bool has_bus(const std::string& id) const;
    const DispatchableGen* find_dispatchable(const std::string& id) const;

    // Throws ValidationError naming the offending asset.
    void validate() const;

    GridSpec with_reserve_factor(double rf) const {
        GridSpec g = *this;
        g.reserve_factor = rf;
        return g;
    }
};

// Per-asset hourly values: demand keyed by load id, capacity by renewable id.
struct HourSeries {
    std::map<std::string, std::vector<double>> demand;
    std::map<std::string, std::vector<double>> capacity;

    bool operator==(const HourSeries&) const = default;
    size_t hours() const;

    double demand_at(const std::string& id, size_t hour) const;
    double capacity_at(const std::string& id, size_t hour) const;
    double total_demand(size_t hour) const;
    double total_capacity(size_t hour) const;
};

// One simulation day: a 48-hour forecast window (day-ahead commitment) and
// at least 24+h hours of actuals (real-time dispatch with look-ahead).
struct DayData {
    std::string date;
    HourSeries forecast;
    HourSeries actual;
};

struct ScenarioSet {
    std::vector<HourSeries> scenarios;
    size_t size() const { return scenarios.size(); }
};

// Checks day series against the grid's asset lists and the horizon rule
// (forecast >= 48 h, actual >= 24+h). Throws ValidationError.
void validate_day(const GridSpec& grid, const DayData& day, int lookahead);
void validate_scenarios(const GridSpec& grid, const ScenarioSet& set, int lookahead);

}  // namespace pcm

#endif
