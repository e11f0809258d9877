#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "pcm/errors.hpp"
#include "pcm/simplex.hpp"

using namespace pcm;

namespace {

HourlyInput one_bus_input(const GridSpec& grid, double demand, double capacity,
                          double p_prev = 0.0) {
    HourlyInput in;
    for (const auto& g : grid.dispatchables) {
        in.p_prev[g.id] = p_prev;
        in.on_prev[g.id] = 1;
    }
    in.demand["D1"] = demand;
    in.capacity["W1"] = capacity;
    HourlyInput::HourData next;
    next.demand["D1"] = demand;
    next.capacity["W1"] = capacity;
    in.lookahead.push_back(next);
    in.reserve_basis = {demand, demand};
    return in;
}

}  // namespace

TEST_CASE("one-bus hand-solved window: objective, hour cost, balance duals") {
    const GridSpec grid = testing::one_bus_grid(10.0, 100.0);
    const CommitmentSchedule commit = testing::all_on(grid);
    const HourlyInput in = one_bus_input(grid, 50.0, 0.0);

    const LinearProgram lp = build_ed(grid, commit, in, 0, 1);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(1000.0).epsilon(1e-10));
    CHECK(sol.dual_of(lp, "balance@0") == doctest::Approx(10.0));
    CHECK(sol.dual_of(lp, "balance@1") == doctest::Approx(10.0));

    const DispatchOutcome out = solve_ed(grid, commit, in, 0, 1);
    CHECK(out.cost == doctest::Approx(1000.0));
    CHECK(out.hour_cost == doctest::Approx(500.0));
    CHECK(out.dispatch.at("G1") == doctest::Approx(50.0));
}

TEST_CASE("zero committed capacity forces shed at the penalty price") {
    const GridSpec grid = testing::one_bus_grid(10.0, 100.0);
    CommitmentSchedule commit;
    commit.on_off["G1"] = std::vector<uint8_t>(48, 0);
    HourlyInput in = one_bus_input(grid, 50.0, 0.0);
    in.on_prev["G1"] = 0;
    in.p_prev["G1"] = 0.0;

    const DispatchOutcome out = solve_ed(grid, commit, in, 0, 1);
    CHECK(out.shed.at("D1") == doctest::Approx(50.0));
    CHECK(out.hour_cost == doctest::Approx(500000.0));
    CHECK(out.dispatch.at("G1") == 0.0);
}

TEST_CASE("free renewable serves load; slack capacity has zero shadow price") {
    const GridSpec grid = testing::one_bus_grid(10.0, 100.0);
    const CommitmentSchedule commit = testing::all_on(grid);
    const HourlyInput in = one_bus_input(grid, 50.0, 80.0);

    const LinearProgram lp = build_ed(grid, commit, in, 0, 1);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal_of(lp, "w@W1@0") == doctest::Approx(50.0));
    CHECK(sol.dual_of(lp, "renew-cap@W1@0") == doctest::Approx(0.0));
    CHECK(sol.objective == doctest::Approx(0.0));
}

TEST_CASE("cost difference between actual and forecast runs") {
    const GridSpec grid = testing::one_bus_grid(10.0, 100.0);
    const CommitmentSchedule commit = testing::all_on(grid);

    SUBCASE("identical inputs give zero difference") {
        const HourlyInput in = one_bus_input(grid, 50.0, 30.0);
        const DispatchOutcome a = solve_ed(grid, commit, in, 0, 1);
        const DispatchOutcome b = solve_ed(grid, commit, in, 0, 1);
        CHECK(a.cost == b.cost);  // determinism, bit for bit
        CHECK(a.cost - b.cost == 0.0);
    }
    SUBCASE("renewable shortfall covered by the generator at cost 10") {
        // Forecast 80 of free renewable, actual 30: the generator covers the
        // 50 MW gap in both window hours.
        const DispatchOutcome fcst = solve_ed(grid, commit, one_bus_input(grid, 50.0, 80.0), 0, 1);
        const DispatchOutcome act = solve_ed(grid, commit, one_bus_input(grid, 50.0, 30.0), 0, 1);
        CHECK(act.hour_cost - fcst.hour_cost == doctest::Approx(10.0 * 20.0));
        CHECK(act.cost - fcst.cost == doctest::Approx(10.0 * 20.0 * 2));
    }
}

TEST_CASE("renewable capacity dual is never positive") {
    const GridSpec grid = testing::tutorial_grid();
    const DayData day = testing::tutorial_day(grid);
    const CommitmentSchedule commit = commit_units(grid, day.forecast, grid.reserve_factor);
    const SystemState state = cold_start_state(grid, commit);
    for (int tau : {0, 8, 17}) {
        const HourlyInput in = make_hourly_input(grid, day.actual, day.forecast, tau, 1, state);
        const DispatchOutcome out = solve_ed(grid, commit, in, tau, 1);
        const LinearProgram lp = build_ed(grid, commit, in, tau, 1);
        for (const auto& n : grid.renewables) {
            const int idx = lp.constraint_index("renew-cap@" + n.id + "@" + std::to_string(tau));
            REQUIRE(idx >= 0);
            CHECK(out.solution.duals[idx] <= 1e-9);
        }
    }
}

TEST_CASE("balance dual equals the mismatch penalty while shedding") {
    const GridSpec grid = testing::one_bus_grid(10.0, 40.0);
    const CommitmentSchedule commit = testing::all_on(grid);
    const HourlyInput in = one_bus_input(grid, 90.0, 0.0);  // 50 MW short

    const LinearProgram lp = build_ed(grid, commit, in, 0, 1);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal_of(lp, "shed@D1@0") == doctest::Approx(50.0));
    CHECK(sol.dual_of(lp, "balance@0") == doctest::Approx(10000.0));
}

TEST_CASE("window cost decomposes into per-hour terms") {
    const GridSpec grid = testing::tutorial_grid();
    const DayData day = testing::tutorial_day(grid);
    const CommitmentSchedule commit = commit_units(grid, day.forecast, grid.reserve_factor);

    SystemState state = cold_start_state(grid, commit);
    double hour_sum = 0.0;
    for (int tau = 0; tau < 24; ++tau) {
        const HourlyInput in = make_hourly_input(grid, day.actual, day.forecast, tau, 1, state);
        const DispatchOutcome out = solve_ed(grid, commit, in, tau, 1);

        // Recompute the hour term from primal values.
        double recomputed = 0.0;
        const LinearProgram lp = build_ed(grid, commit, in, tau, 1);
        for (const auto& g : grid.dispatchables) {
            recomputed += g.marginal_cost * out.dispatch.at(g.id);
            if (commit.is_on(g.id, tau)) recomputed += g.no_load_cost;
        }
        double shed = 0.0;
        for (const auto& [id, v] : out.shed) shed += v;
        recomputed += grid.penalties.load_mismatch * (shed + out.over_gen) +
                      grid.penalties.reserve_shortfall * out.reserve_shortfall;
        CHECK(std::abs(out.hour_cost - recomputed) <= 1e-6 * (1 + std::abs(recomputed)));

        hour_sum += out.hour_cost;
        state = out.next_state(commit, tau);
    }
    CHECK(hour_sum > 0.0);
}

TEST_CASE("commitment heuristic") {
    GridSpec grid;
    grid.buses = {{"B1", ""}};
    auto gen = [&](const std::string& id, double p_max, double cost) {
        DispatchableGen g;
        g.id = id;
        g.bus = "B1";
        g.p_min = 0.0;
        g.p_max = p_max;
        g.ramp_up = g.ramp_down = p_max;
        g.marginal_cost = cost;
        return g;
    };
    grid.dispatchables = {gen("GA", 60, 5), gen("GB", 60, 10), gen("GC", 60, 20)};
    grid.loads = {{"D1", "B1"}};
    grid.validate();

    HourSeries forecast;
    forecast.demand["D1"] = std::vector<double>(48, 100.0);

    SUBCASE("merit order stops once the reserve-inflated target is met") {
        const CommitmentSchedule c = commit_units(grid, forecast, 0.10);
        // Target 110; GA + GB = 120 suffices, GC stays off.
        for (int t = 0; t < 48; ++t) {
            CHECK(c.is_on("GA", t));
            CHECK(c.is_on("GB", t));
            CHECK_FALSE(c.is_on("GC", t));
        }
    }
    SUBCASE("insufficient fleet commits everything") {
        HourSeries heavy;
        heavy.demand["D1"] = std::vector<double>(48, 500.0);
        const CommitmentSchedule c = commit_units(grid, heavy, 0.10);
        for (int t = 0; t < 48; ++t) CHECK(c.is_on("GC", t));
    }
    SUBCASE("generator list order does not matter") {
        GridSpec shuffled = grid;
        std::reverse(shuffled.dispatchables.begin(), shuffled.dispatchables.end());
        const CommitmentSchedule a = commit_units(grid, forecast, 0.10);
        const CommitmentSchedule b = commit_units(shuffled, forecast, 0.10);
        CHECK(a.on_off == b.on_off);
    }
    SUBCASE("lower adjusted capacity never decommits thermal units") {
        GridSpec with_wind = grid;
        with_wind.renewables = {{"W1", "B1", RenewableGen::Kind::Wind}};
        with_wind.validate();
        HourSeries fc = forecast;
        fc.capacity["W1"] = std::vector<double>(48, 50.0);
        HourSeries adjusted = fc;
        adjusted.capacity["W1"] = std::vector<double>(48, 10.0);

        const CommitmentSchedule base = commit_units(with_wind, fc, 0.10);
        const CommitmentSchedule adj = commit_units(with_wind, fc, 0.10, adjusted);
        for (int t = 0; t < 48; ++t) {
            double cap_base = 0.0, cap_adj = 0.0;
            for (const auto& g : with_wind.dispatchables) {
                cap_base += base.is_on(g.id, t) ? g.p_max : 0.0;
                cap_adj += adj.is_on(g.id, t) ? g.p_max : 0.0;
            }
            CHECK(cap_adj >= cap_base);
        }
    }
}

TEST_CASE("min_up gap repair extends on-blocks forward") {
    GridSpec grid;
    grid.buses = {{"B1", ""}};
    DispatchableGen g;
    g.id = "G1";
    g.bus = "B1";
    g.p_min = 0.0;
    g.p_max = 100.0;
    g.ramp_up = g.ramp_down = 100.0;
    g.marginal_cost = 5.0;
    g.min_up = 3;
    g.min_down = 2;
    grid.dispatchables = {g};
    grid.loads = {{"D1", "B1"}};
    grid.validate();

    // Demand pattern 100,0,100,... turns the unit on for single hours.
    HourSeries forecast;
    std::vector<double> demand(48, 0.0);
    demand[0] = demand[2] = 100.0;
    forecast.demand["D1"] = demand;

    const CommitmentSchedule c = commit_units(grid, forecast, 0.0);
    // Hour 0 block must last min_up = 3 hours, swallowing the 1-hour gap.
    CHECK(c.is_on("G1", 0));
    CHECK(c.is_on("G1", 1));
    CHECK(c.is_on("G1", 2));

    // Run-length rules hold over the whole horizon.
    const auto& row = c.on_off.at("G1");
    int t = 0;
    while (t < 48) {
        const bool v = row[t] != 0;
        int len = 0;
        const int start = t;
        while (t < 48 && (row[t] != 0) == v) {
            ++len;
            ++t;
        }
        if (v && t < 48) CHECK(len >= g.min_up);
        if (!v && start > 0 && t < 48) CHECK(len >= g.min_down);
    }
}

TEST_CASE("missing commitment hour is an error") {
    const GridSpec grid = testing::one_bus_grid();
    CommitmentSchedule commit;
    commit.on_off["G1"] = std::vector<uint8_t>(2, 1);  // too short
    const HourlyInput in = one_bus_input(grid, 50.0, 0.0);
    CHECK_THROWS_AS(build_ed(grid, commit, in, 1, 1), DataError);
}

TEST_CASE("reserve shortfall is priced, not infeasible") {
    GridSpec grid = testing::one_bus_grid(10.0, 100.0);
    grid.reserve_factor = 0.5;  // 45 MW of reserve on a 90 MW load
    const CommitmentSchedule commit = testing::all_on(grid);
    HourlyInput in = one_bus_input(grid, 90.0, 0.0);
    in.reserve_basis = {90.0, 90.0};

    const DispatchOutcome out = solve_ed(grid, commit, in, 0, 1);
    // Generator has 10 MW headroom after serving 90: shortfall 35 MW.
    CHECK(out.reserve_shortfall == doctest::Approx(35.0));
    CHECK(out.hour_cost == doctest::Approx(90.0 * 10.0 + 35.0 * 1000.0));
}
