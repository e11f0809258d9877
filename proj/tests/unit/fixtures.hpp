#ifndef PCM_TESTS_FIXTURES_HPP
#define PCM_TESTS_FIXTURES_HPP

// Shared test fixtures: a one-bus toy system for hand-solved cases and
// helpers around the on-disk tutorial bundle.

#include <string>
#include <vector>

#include "pcm/dispatch.hpp"
#include "pcm/grid.hpp"
#include "pcm/io.hpp"

namespace pcm::testing {

inline std::string data_dir() { return PCM_DATA_DIR; }
inline std::string tutorial_dir() { return data_dir() + "/tutorial"; }

inline GridSpec tutorial_grid() { return load_grid(tutorial_dir() + "/grid.txt"); }

inline DayData tutorial_day(const GridSpec& grid, const std::string& date = "2020-07-08",
                            int h = 1) {
    return load_day_data(grid, DataPaths::in_dir(tutorial_dir()), date, h);
}

// One bus, one generator (cost 10, capacity 100), one renewable, one load.
inline GridSpec one_bus_grid(double gen_cost = 10.0, double gen_cap = 100.0) {
    GridSpec g;
    g.buses = {{"B1", ""}};
    DispatchableGen gen;
    gen.id = "G1";
    gen.bus = "B1";
    gen.p_min = 0.0;
    gen.p_max = gen_cap;
    gen.ramp_up = gen_cap;
    gen.ramp_down = gen_cap;
    gen.marginal_cost = gen_cost;
    gen.no_load_cost = 0.0;
    g.dispatchables = {gen};
    g.renewables = {{"W1", "B1", RenewableGen::Kind::Wind}};
    g.loads = {{"D1", "B1"}};
    g.reserve_factor = 0.0;
    g.validate();
    return g;
}

// Flat 48-hour series for the one-bus system.
inline HourSeries flat_series(double demand, double capacity, size_t hours = 48) {
    HourSeries s;
    s.demand["D1"] = std::vector<double>(hours, demand);
    s.capacity["W1"] = std::vector<double>(hours, capacity);
    return s;
}

inline CommitmentSchedule all_on(const GridSpec& grid) {
    CommitmentSchedule c;
    for (const auto& g : grid.dispatchables)
        c.on_off[g.id] = std::vector<uint8_t>(48, 1);
    return c;
}

inline SystemState steady_state(const GridSpec& grid, double level_fraction = 0.0) {
    SystemState s;
    for (const auto& g : grid.dispatchables) {
        s.p_prev[g.id] = g.p_min + level_fraction * (g.p_max - g.p_min);
        s.on_prev[g.id] = 1;
    }
    return s;
}

}  // namespace pcm::testing

#endif
