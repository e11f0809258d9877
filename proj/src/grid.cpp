#include "pcm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pcm/errors.hpp"

namespace pcm {

namespace {
constexpr double kPtdfTolerance = 1e-6;

void check_unique(std::set<std::string>& seen, const std::string& id, const char* what) {
    if (!seen.insert(id).second)
        throw ValidationError(std::string("duplicate ") + what + " id '" + id + "'");
}
}  // namespace

bool GridSpec::has_bus(const std::string& id) const {
    return std::any_of(buses.begin(), buses.end(), [&](const Bus& b) { return b.id == id; });
}

const DispatchableGen* GridSpec::find_dispatchable(const std::string& id) const {
    for (const auto& g : dispatchables)
        if (g.id == id) return &g;
    return nullptr;
}

void GridSpec::validate() const {
    std::set<std::string> bus_ids;
    for (const auto& b : buses) check_unique(bus_ids, b.id, "bus");

    std::set<std::string> ids;
    for (const auto& l : lines) {
        check_unique(ids, l.id, "line");
        if (l.flow_limit < 0)
            throw ValidationError("line '" + l.id + "': negative flow limit");
        for (const auto& [bus, v] : l.ptdf) {
            if (!bus_ids.count(bus))
                throw ValidationError("line '" + l.id + "' references unknown bus '" + bus + "'");
            if (std::abs(v) > 1.0 + kPtdfTolerance)
                throw ValidationError("line '" + l.id + "': ptdf for bus '" + bus + "' exceeds 1");
        }
    }

    ids.clear();
    for (const auto& g : dispatchables) {
        check_unique(ids, g.id, "generator");
        if (!bus_ids.count(g.bus))
            throw ValidationError("generator '" + g.id + "' references unknown bus '" + g.bus + "'");
        if (g.p_min < 0 || g.p_min > g.p_max)
            throw ValidationError("generator '" + g.id + "': need 0 <= p_min <= p_max");
        if (g.ramp_up < 0 || g.ramp_down < 0)
            throw ValidationError("generator '" + g.id + "': negative ramp rate");
        if (g.marginal_cost < 0 || g.no_load_cost < 0)
            throw ValidationError("generator '" + g.id + "': negative cost");
        if (g.min_up < 1 || g.min_down < 1)
            throw ValidationError("generator '" + g.id + "': min_up and min_down must be >= 1");
    }

    ids.clear();
    for (const auto& r : renewables) {
        check_unique(ids, r.id, "renewable");
        if (!bus_ids.count(r.bus))
            throw ValidationError("renewable '" + r.id + "' references unknown bus '" + r.bus + "'");
    }

    ids.clear();
    for (const auto& l : loads) {
        check_unique(ids, l.id, "load");
        if (!bus_ids.count(l.bus))
            throw ValidationError("load '" + l.id + "' references unknown bus '" + l.bus + "'");
    }

    if (penalties.load_mismatch < 0 || penalties.reserve_shortfall < 0)
        throw ValidationError("penalties must be non-negative");
    if (reserve_factor < 0 || reserve_factor > 1)
        throw ValidationError("reserve_factor must lie in [0, 1]");
}

size_t HourSeries::hours() const {
    size_t h = 0;
    bool first = true;
    for (const auto& [id, v] : demand) {
        if (first || v.size() < h) h = v.size();
        first = false;
    }
    for (const auto& [id, v] : capacity) {
        if (first || v.size() < h) h = v.size();
        first = false;
    }
    return first ? 0 : h;
}

double HourSeries::demand_at(const std::string& id, size_t hour) const {
    auto it = demand.find(id);
    if (it == demand.end() || hour >= it->second.size())
        throw DataError("no demand value for asset '" + id + "' at hour " + std::to_string(hour));
    return it->second[hour];
}

double HourSeries::capacity_at(const std::string& id, size_t hour) const {
    auto it = capacity.find(id);
    if (it == capacity.end() || hour >= it->second.size())
        throw DataError("no capacity value for asset '" + id + "' at hour " + std::to_string(hour));
    return it->second[hour];
}

double HourSeries::total_demand(size_t hour) const {
    double total = 0.0;
    for (const auto& [id, v] : demand) {
        if (hour >= v.size())
            throw DataError("no demand value for asset '" + id + "' at hour " + std::to_string(hour));
        total += v[hour];
    }
    return total;
}

double HourSeries::total_capacity(size_t hour) const {
    double total = 0.0;
    for (const auto& [id, v] : capacity) {
        if (hour >= v.size())
            throw DataError("no capacity value for asset '" + id + "' at hour " + std::to_string(hour));
        total += v[hour];
    }
    return total;
}

namespace {

void check_series_assets(const GridSpec& grid, const HourSeries& series, size_t need_hours,
                         const std::string& label) {
    for (const auto& load : grid.loads) {
        auto it = series.demand.find(load.id);
        if (it == series.demand.end())
            throw ValidationError(label + ": missing demand series for load '" + load.id + "'");
        if (it->second.size() < need_hours)
            throw ValidationError(label + ": demand series for '" + load.id + "' too short: need " +
                                  std::to_string(need_hours) + ", have " +
                                  std::to_string(it->second.size()));
    }
    for (const auto& ren : grid.renewables) {
        auto it = series.capacity.find(ren.id);
        if (it == series.capacity.end())
            throw ValidationError(label + ": missing capacity series for renewable '" + ren.id + "'");
        if (it->second.size() < need_hours)
            throw ValidationError(label + ": capacity series for '" + ren.id + "' too short: need " +
                                  std::to_string(need_hours) + ", have " +
                                  std::to_string(it->second.size()));
    }
    for (const auto& [id, v] : series.demand) {
        if (!std::any_of(grid.loads.begin(), grid.loads.end(),
                         [&](const LoadAsset& l) { return l.id == id; }))
            throw ValidationError(label + ": demand series for unknown load '" + id + "'");
        for (size_t t = 0; t < v.size(); ++t)
            if (v[t] < 0)
                throw ValidationError(label + ": negative demand for '" + id + "' at hour " +
                                      std::to_string(t));
    }
    for (const auto& [id, v] : series.capacity) {
        if (!std::any_of(grid.renewables.begin(), grid.renewables.end(),
                         [&](const RenewableGen& r) { return r.id == id; }))
            throw ValidationError(label + ": capacity series for unknown renewable '" + id + "'");
        for (size_t t = 0; t < v.size(); ++t)
            if (v[t] < 0)
                throw ValidationError(label + ": negative capacity for '" + id + "' at hour " +
                                      std::to_string(t));
    }
}

}  // namespace

void validate_day(const GridSpec& grid, const DayData& day, int lookahead) {
    check_series_assets(grid, day.forecast, 48, "forecast");
    check_series_assets(grid, day.actual, 24 + static_cast<size_t>(lookahead), "actual");
}

void validate_scenarios(const GridSpec& grid, const ScenarioSet& set, int lookahead) {
    if (set.scenarios.empty()) throw ValidationError("empty scenario set");
    const size_t need = 24 + static_cast<size_t>(lookahead);
    for (size_t j = 0; j < set.scenarios.size(); ++j)
        check_series_assets(grid, set.scenarios[j], need, "scenario " + std::to_string(j));
}

}  // namespace pcm
