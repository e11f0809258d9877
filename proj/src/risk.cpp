#include "pcm/risk.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "pcm/errors.hpp"
#include "pcm/parallel.hpp"
#include "pcm/text.hpp"

namespace pcm {

namespace {
constexpr double kDenominatorEpsilon = 1e-6;  // MW
}

void AdjustmentParams::validate() const {
    if (r_low <= 0 || r_high <= 0)
        throw ConfigError("adjustment parameters r_low and r_high must be positive");
}

std::vector<size_t> rank_scenarios(const std::vector<double>& costs, double alpha) {
    if (costs.empty()) throw DataError("rank_scenarios: empty cost vector");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw ConfigError("rank_scenarios: alpha must lie in (0, 1)");
    const size_t k = costs.size();
    const size_t tail = static_cast<size_t>(std::ceil(alpha * static_cast<double>(k)));
    if (tail == 0) throw ConfigError("rank_scenarios: alpha*K must be >= 1");

    std::vector<size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        if (costs[a] != costs[b]) return costs[a] > costs[b];
        return a < b;
    });
    idx.resize(tail);
    std::sort(idx.begin(), idx.end());
    return idx;
}

RiskScoreTable risk_scores(const std::map<size_t, AttributionReport>& reports,
                           const std::vector<size_t>& worst_set, double alpha, size_t count) {
    if (worst_set.empty()) throw DataError("risk_scores: empty worst set");
    RiskScoreTable table;
    table.alpha = alpha;
    table.scenario_count = count;
    table.worst_set = worst_set;

    const double inv = 1.0 / static_cast<double>(worst_set.size());
    for (const size_t j : worst_set) {
        auto it = reports.find(j);
        if (it == reports.end())
            throw DataError("risk_scores: missing attribution report for scenario " +
                            std::to_string(j));
        const auto& report = it->second;
        for (const auto& hr : report.hours) {
            for (const auto& [id, v] : hr.renew) {
                auto& row = table.renew_score[id];
                if (row.empty()) row.assign(report.hours.size(), 0.0);
                row[hr.tau] += v * inv;
            }
            for (const auto& [id, v] : hr.load) {
                auto& row = table.load_score[id];
                if (row.empty()) row.assign(report.hours.size(), 0.0);
                row[hr.tau] += v * inv;
            }
        }
    }
    return table;
}

std::optional<double> per_mwh_score(double score, double q_fcst,
                                    const std::vector<double>& tail_caps, size_t count,
                                    TailDenominator denominator) {
    double tail_sum = 0.0;
    for (const double q : tail_caps) tail_sum += q;
    const double divisor = denominator == TailDenominator::OverK
                               ? static_cast<double>(count)
                               : static_cast<double>(tail_caps.size());
    const double gap = q_fcst - tail_sum / divisor;
    if (gap <= kDenominatorEpsilon) return std::nullopt;
    return score / gap;
}

double adjust_fraction(double per_mwh, const AdjustmentParams& params) {
    params.validate();
    return std::max(0.0, std::min(1.0, (per_mwh - params.r_low) / params.r_high));
}

double adjust_capacity(double q_fcst, double q_min, double r) {
    if (q_min < 0 || q_min > q_fcst)
        throw DataError("adjust_capacity: need 0 <= q_min <= q_fcst");
    if (r < 0 || r > 1) throw DataError("adjust_capacity: r outside [0, 1]");
    return q_fcst - r * (q_fcst - q_min);
}

HourSeries AdjustedCapacities::as_series(const HourSeries& forecast) const {
    HourSeries out;
    out.capacity = forecast.capacity;
    for (const auto& [id, rows] : entries) {
        auto it = out.capacity.find(id);
        if (it == out.capacity.end()) continue;
        for (size_t t = 0; t < rows.size() && t < it->second.size(); ++t)
            it->second[t] = rows[t].q_adj;
    }
    return out;
}

AdjustedCapacities build_adjustments(const GridSpec& grid, const DayData& day,
                                     const ScenarioSet& scenarios, double alpha,
                                     const QuadratureConfig& qcfg, const AdjustmentParams& params,
                                     int h, const std::optional<SystemState>& state_opt, int jobs) {
    params.validate();
    qcfg.validate();
    validate_scenarios(grid, scenarios, h);
    const size_t count = scenarios.size();
    if (alpha * static_cast<double>(count) < 1.0)
        throw ConfigError("build_adjustments: alpha*K must be >= 1");

    const CommitmentSchedule commit = commit_units(grid, day.forecast, grid.reserve_factor);
    const SystemState initial_state = state_opt ? *state_opt : cold_start_state(grid, commit);

    // Per-scenario daily ED cost (sum of hour-tau terms along the chain).
    std::vector<double> costs(count, 0.0);
    parallel_for(count, jobs, [&](size_t j) {
        SystemState state = initial_state;
        double total = 0.0;
        for (int tau = 0; tau < 24; ++tau) {
            const HourlyInput in =
                make_hourly_input(grid, scenarios.scenarios[j], day.forecast, tau, h, state);
            const DispatchOutcome outcome = solve_ed(grid, commit, in, tau, h);
            total += outcome.hour_cost;
            state = outcome.next_state(commit, tau);
        }
        costs[j] = total;
    });

    const std::vector<size_t> worst = rank_scenarios(costs, alpha);

    std::vector<AttributionReport> tail_reports(worst.size());
    parallel_for(worst.size(), jobs, [&](size_t i) {
        const DayData target = with_actual(day, scenarios.scenarios[worst[i]]);
        tail_reports[i] = attribute_day(grid, commit, target, qcfg, h, initial_state, 1);
    });
    std::map<size_t, AttributionReport> by_index;
    for (size_t i = 0; i < worst.size(); ++i) by_index[worst[i]] = std::move(tail_reports[i]);

    const RiskScoreTable table = risk_scores(by_index, worst, alpha, count);

    AdjustedCapacities adj;
    for (const auto& n : grid.renewables) {
        const auto score_it = table.renew_score.find(n.id);
        std::vector<CapacityAdjustment> rows(24);
        for (int tau = 0; tau < 24; ++tau) {
            CapacityAdjustment& row = rows[tau];
            row.q_fcst = day.forecast.capacity_at(n.id, tau);
            row.score = score_it == table.renew_score.end() ? 0.0 : score_it->second[tau];

            double q_min = kInf;
            for (const auto& s : scenarios.scenarios)
                q_min = std::min(q_min, s.capacity_at(n.id, tau));
            row.q_min = std::min(q_min, row.q_fcst);

            std::vector<double> tail_caps;
            tail_caps.reserve(worst.size());
            for (const size_t j : worst) tail_caps.push_back(scenarios.scenarios[j].capacity_at(n.id, tau));

            const auto r_opt =
                per_mwh_score(row.score, row.q_fcst, tail_caps, count, params.denominator);
            if (r_opt) {
                row.adjustable = true;
                row.per_mwh = *r_opt;
                row.fraction = adjust_fraction(row.per_mwh, params);
            }
            row.q_adj = adjust_capacity(row.q_fcst, row.q_min, row.fraction);
        }
        adj.entries[n.id] = std::move(rows);
    }
    return adj;
}

void write_risk_csv(const AdjustedCapacities& adj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "hour,asset,score,per_mwh,fraction,q_fcst,q_min,q_adj\n";
    for (const auto& [id, rows] : adj.entries) {
        for (size_t t = 0; t < rows.size(); ++t) {
            const auto& r = rows[t];
            out << t << "," << id << "," << fmt_double(r.score) << "," << fmt_double(r.per_mwh)
                << "," << fmt_double(r.fraction) << "," << fmt_double(r.q_fcst) << ","
                << fmt_double(r.q_min) << "," << fmt_double(r.q_adj) << "\n";
        }
    }
}

}  // namespace pcm
