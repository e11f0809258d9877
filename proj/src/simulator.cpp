#include "pcm/simulator.hpp"

#include <cmath>
#include <fstream>

#include "pcm/errors.hpp"
#include "pcm/svg.hpp"
#include "pcm/text.hpp"

namespace pcm {

PolicyConfig PolicyConfig::risk_neutral(double reserve_factor) {
    PolicyConfig p;
    p.mode = PolicyMode::RiskNeutral;
    p.reserve_factor = reserve_factor;
    p.name = "rn-" + fmt_double(reserve_factor);
    return p;
}

PolicyConfig PolicyConfig::risk_averse(double r_high, double r_low, double reserve_factor) {
    PolicyConfig p;
    p.mode = PolicyMode::RiskAverse;
    p.reserve_factor = reserve_factor;
    p.adjustment.r_low = r_low;
    p.adjustment.r_high = r_high;
    p.name = "ra-" + fmt_double(r_high);
    return p;
}

DayResult run_day(const GridSpec& grid, const DayData& day, const PolicyConfig& policy,
                  const std::optional<ScenarioSet>& scenarios,
                  const std::optional<SystemState>& initial_state, int h, int jobs) {
    const GridSpec g = grid.with_reserve_factor(policy.reserve_factor);
    validate_day(g, day, h);

    std::optional<HourSeries> adjusted;
    if (policy.mode == PolicyMode::RiskAverse) {
        if (!scenarios)
            throw ConfigError("risk-averse policy needs a scenario set for day " + day.date);
        const AdjustedCapacities adj = build_adjustments(
            g, day, *scenarios, policy.alpha, policy.quadrature, policy.adjustment, h,
            initial_state, jobs);
        adjusted = adj.as_series(day.forecast);
    }

    const CommitmentSchedule commit = commit_units(g, day.forecast, policy.reserve_factor, adjusted);

    DayResult result;
    result.date = day.date;
    result.policy = policy.name;
    result.hours.resize(24);

    // Real-time loop always dispatches against actual capacities.
    SystemState state = initial_state ? *initial_state : cold_start_state(g, commit);
    for (int tau = 0; tau < 24; ++tau) {
        const HourlyInput in = make_hourly_input(g, day.actual, day.forecast, tau, h, state);
        const DispatchOutcome outcome = solve_ed(g, commit, in, tau, h);
        auto& row = result.hours[tau];
        row.cost = outcome.hour_cost;
        for (const auto& [id, v] : outcome.shed) row.shed += v;
        row.over_gen = outcome.over_gen;
        row.reserve_shortfall = outcome.reserve_shortfall;
        row.renewable_dispatch = outcome.renewable_used;
        row.dispatch = outcome.dispatch;
        result.production_cost += row.cost;
        result.load_shed += row.shed;
        result.over_gen += row.over_gen;
        result.reserve_shortfall += row.reserve_shortfall;
        state = outcome.next_state(commit, tau);
    }
    result.final_state = state;
    return result;
}

RangeResult run_range(const GridSpec& grid, const std::vector<DayData>& days,
                      const PolicyConfig& policy, const ScenarioProvider& scenarios, int h,
                      int jobs) {
    if (days.empty()) throw DataError("run_range: no days supplied");
    RangeResult range;
    range.policy = policy.name;

    std::optional<SystemState> state;
    for (size_t d = 0; d < days.size(); ++d) {
        std::optional<ScenarioSet> set;
        if (policy.mode == PolicyMode::RiskAverse) {
            if (!scenarios)
                throw ConfigError("risk-averse policy needs a scenario provider");
            set = scenarios(d, days[d]);
        }
        DayResult day_result = run_day(grid, days[d], policy, set, state, h, jobs);
        state = day_result.final_state;
        range.total_cost += day_result.production_cost;
        range.total_shed += day_result.load_shed;
        range.days.push_back(std::move(day_result));
    }
    range.mean_daily_cost = range.total_cost / static_cast<double>(days.size());
    return range;
}

PolicyComparison compare_policies(const GridSpec& grid, const std::vector<DayData>& days,
                                  const std::vector<PolicyConfig>& policies,
                                  const ScenarioProvider& scenarios, int h, int jobs) {
    if (policies.size() < 2)
        throw ConfigError("compare_policies: need at least two policies");
    PolicyComparison cmp;
    for (const auto& policy : policies)
        cmp.results.push_back(run_range(grid, days, policy, scenarios, h, jobs));
    return cmp;
}

void write_day_json(const DayResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "{\n";
    out << "  \"date\": \"" << result.date << "\",\n";
    out << "  \"policy\": \"" << result.policy << "\",\n";
    out << "  \"production_cost\": " << fmt_double(result.production_cost) << ",\n";
    out << "  \"load_shed\": " << fmt_double(result.load_shed) << ",\n";
    out << "  \"over_gen\": " << fmt_double(result.over_gen) << ",\n";
    out << "  \"reserve_shortfall\": " << fmt_double(result.reserve_shortfall) << ",\n";
    out << "  \"hours\": [\n";
    for (size_t t = 0; t < result.hours.size(); ++t) {
        const auto& hr = result.hours[t];
        out << "    {\"hour\": " << t << ", \"cost\": " << fmt_double(hr.cost)
            << ", \"shed\": " << fmt_double(hr.shed)
            << ", \"over_gen\": " << fmt_double(hr.over_gen)
            << ", \"reserve_shortfall\": " << fmt_double(hr.reserve_shortfall) << "}"
            << (t + 1 < result.hours.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

void write_comparison_csv(const PolicyComparison& cmp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "date";
    for (const auto& r : cmp.results) out << "," << r.policy << "_cost," << r.policy << "_shed";
    out << "\n";
    if (cmp.results.empty()) return;
    const size_t n_days = cmp.results[0].days.size();
    for (size_t d = 0; d < n_days; ++d) {
        out << cmp.results[0].days[d].date;
        for (const auto& r : cmp.results)
            out << "," << fmt_double(r.days[d].production_cost) << ","
                << fmt_double(r.days[d].load_shed);
        out << "\n";
    }
    out << "aggregate";
    for (const auto& r : cmp.results)
        out << "," << fmt_double(r.total_cost) << "," << fmt_double(r.total_shed);
    out << "\n";
}

void write_comparison_svg(const PolicyComparison& cmp, const std::string& path) {
    std::vector<SvgSeries> series;
    for (const auto& r : cmp.results) {
        SvgSeries s;
        s.label = r.policy;
        for (const auto& d : r.days) s.values.push_back(d.production_cost);
        series.push_back(std::move(s));
    }
    write_svg_lines(series, "daily production cost ($)", path);
}

}  // namespace pcm
