#ifndef PCM_SIMULATOR_HPP
#define PCM_SIMULATOR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcm/attribution.hpp"
#include "pcm/dispatch.hpp"
#include "pcm/grid.hpp"
#include "pcm/risk.hpp"

namespace pcm {

enum class PolicyMode { RiskNeutral, RiskAverse };

struct PolicyConfig {
    PolicyMode mode = PolicyMode::RiskNeutral;
    double reserve_factor = 0.10;        // risk-averse default is 0.05
    AdjustmentParams adjustment;         // risk-averse only
    double alpha = 0.05;
    QuadratureConfig quadrature;
    std::string name;

    static PolicyConfig risk_neutral(double reserve_factor);
    static PolicyConfig risk_averse(double r_high, double r_low = 20.0,
                                    double reserve_factor = 0.05);
};

struct DayResult {
    std::string date;
    std::string policy;
    double production_cost = 0.0;     // $ over the 24 real-time hours
    double load_shed = 0.0;           // MWh
    double over_gen = 0.0;            // MWh
    double reserve_shortfall = 0.0;   // MWh

    struct HourRow {
        double cost = 0.0;
        double shed = 0.0;
        double over_gen = 0.0;
        double reserve_shortfall = 0.0;
        std::map<std::string, double> renewable_dispatch;
        std::map<std::string, double> dispatch;
    };
    std::vector<HourRow> hours;
    SystemState final_state;  // crosses midnight into the next day
};

struct RangeResult {
    std::string policy;
    std::vector<DayResult> days;
    double mean_daily_cost = 0.0;
    double total_cost = 0.0;
    double total_shed = 0.0;
};

// Supplies the scenario set for a given day (risk-averse policies only).
using ScenarioProvider = std::function<ScenarioSet(size_t day_index, const DayData& day)>;

// One day-ahead/real-time cycle. Risk-neutral: commit on the forecast, then
// 24 chained EDs on actuals. Risk-averse: adjust renewable capacities from
// scenario tail risk first, commit on the adjusted forecast, then run the
// same real-time loop on unadjusted actuals. Without an initial state the day
// cold-starts: committed units at p_min, the rest at zero.
DayResult run_day(const GridSpec& grid, const DayData& day, const PolicyConfig& policy,
                  const std::optional<ScenarioSet>& scenarios = {},
                  const std::optional<SystemState>& initial_state = {}, int h = 1, int jobs = 0);

// Rolling simulation: day d+1 starts from day d's final dispatch.
RangeResult run_range(const GridSpec& grid, const std::vector<DayData>& days,
                      const PolicyConfig& policy, const ScenarioProvider& scenarios, int h,
                      int jobs = 0);

struct PolicyComparison {
    std::vector<RangeResult> results;  // one per policy, same day order
};

PolicyComparison compare_policies(const GridSpec& grid, const std::vector<DayData>& days,
                                  const std::vector<PolicyConfig>& policies,
                                  const ScenarioProvider& scenarios, int h, int jobs = 0);

void write_day_json(const DayResult& result, const std::string& path);
void write_comparison_csv(const PolicyComparison& cmp, const std::string& path);
void write_comparison_svg(const PolicyComparison& cmp, const std::string& path);

}  // namespace pcm

#endif
