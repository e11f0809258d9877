#ifndef PCM_DISPATCH_HPP
#define PCM_DISPATCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcm/grid.hpp"
#include "pcm/lp.hpp"

namespace pcm {

// Day-ahead on/off schedule covering 48 hours per dispatchable generator.
struct CommitmentSchedule {
    std::map<std::string, std::vector<uint8_t>> on_off;

    bool is_on(const std::string& gen, int hour) const;
};

// Dispatch state carried across hours and days: optimal output of the
// previous hour plus its commitment status.
struct SystemState {
    std::map<std::string, double> p_prev;    // MW at tau-1
    std::map<std::string, uint8_t> on_prev;  // committed at tau-1

    double p_of(const std::string& gen) const {
        auto it = p_prev.find(gen);
        return it == p_prev.end() ? 0.0 : it->second;
    }
    bool on_of(const std::string& gen) const {
        auto it = on_prev.find(gen);
        return it != on_prev.end() && it->second != 0;
    }
};

// One hour's ED parameter bundle. Hour-tau demand/capacity and p_prev are the
// quantities the attribution path varies; look-ahead hours and the reserve
// basis stay frozen at day-ahead forecasts.
struct HourlyInput {
    std::map<std::string, double> p_prev;    // initial state p_{tau-1}
    std::map<std::string, uint8_t> on_prev;  // commitment at tau-1
    std::map<std::string, double> demand;    // d_tau per load
    std::map<std::string, double> capacity;  // q_tau per renewable

    struct HourData {
        std::map<std::string, double> demand;
        std::map<std::string, double> capacity;
    };
    std::vector<HourData> lookahead;      // hours tau+1 .. tau+h
    std::vector<double> reserve_basis;    // forecast system demand, tau .. tau+h
};

// Assembles the HourlyInput for hour tau: point data from `point_source`,
// look-ahead and reserve basis from `forecast`, initial state from `state`.
HourlyInput make_hourly_input(const GridSpec& grid, const HourSeries& point_source,
                              const HourSeries& forecast, int tau, int h,
                              const SystemState& state);

struct DispatchOutcome {
    double cost = 0.0;       // full look-ahead-window objective (F_tau)
    double hour_cost = 0.0;  // hour-tau term of the objective
    std::map<std::string, double> dispatch;        // p_tau per dispatchable
    std::map<std::string, double> renewable_used;  // w_tau per renewable
    std::map<std::string, double> shed;            // MWh per load at tau
    double over_gen = 0.0;
    double reserve_shortfall = 0.0;
    LpSolution solution;

    SystemState next_state(const CommitmentSchedule& commit, int tau) const;
};

// Builds the hourly ED as an LP over hours tau..tau+h. Constraint tags:
//   balance@t                system power balance (rhs = total demand)
//   renew-cap@<n>@t          renewable output limit (rhs = capacity)
//   headroom@<g>@t           p + r <= committed p_max
//   ramp-up@<g>@t            rhs carries +p_prev at t = tau
//   ramp-down@<g>@t          rhs carries -p_prev at t = tau
//   line+@<k>@t, line-@<k>@t PTDF flow limits (rhs carries demand terms)
//   reserve@t                sum r + v >= reserve_factor * forecast demand
// Ramp constraints are emitted only between two committed hours; startup and
// shutdown transitions are unconstrained so the LP stays feasible for every
// commitment pattern.
LinearProgram build_ed(const GridSpec& grid, const CommitmentSchedule& commit,
                       const HourlyInput& input, int tau, int h);

// Solves the hourly ED. A non-optimal status indicates a malformed model and
// is raised as SolveError.
DispatchOutcome solve_ed(const GridSpec& grid, const CommitmentSchedule& commit,
                         const HourlyInput& input, int tau, int h);

// Merit-order commitment heuristic: per hour, commit generators in ascending
// (marginal_cost, id) order until committed capacity covers
// (1 + reserve_factor) * max(0, forecast demand - renewable capacity), then
// repair min_up/min_down violations by extending on-blocks forward.
// `adjusted_capacity`, when given, replaces the forecast renewable capacity
// per asset and hour.
CommitmentSchedule commit_units(const GridSpec& grid, const HourSeries& forecast,
                                double reserve_factor,
                                const std::optional<HourSeries>& adjusted_capacity = std::nullopt);

// Initial state for the first simulated day: committed units at p_min.
SystemState cold_start_state(const GridSpec& grid, const CommitmentSchedule& commit);

}  // namespace pcm

#endif
