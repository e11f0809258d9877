#ifndef PCM_RISK_HPP
#define PCM_RISK_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcm/attribution.hpp"
#include "pcm/grid.hpp"

namespace pcm {

// Tail-averaged attribution scores over the worst-alphaK scenario set.
struct RiskScoreTable {
    double alpha = 0.05;
    size_t scenario_count = 0;              // K
    std::vector<size_t> worst_set;          // S, ascending scenario indices
    std::map<std::string, std::vector<double>> renew_score;  // id -> per-hour $
    std::map<std::string, std::vector<double>> load_score;   // informational only
};

// Convention for the denominator of the per-MWh score: the printed form
// divides the tail sum by K; the alternative divides by alpha*K (= |S|).
enum class TailDenominator { OverK, OverAlphaK };

struct AdjustmentParams {
    double r_low = 20.0;    // $/MWh, adjustment starts above this score
    double r_high = 200.0;  // $/MWh, scale of the adjustment ramp
    TailDenominator denominator = TailDenominator::OverK;

    void validate() const;
};

struct CapacityAdjustment {
    double q_fcst = 0.0;
    double q_min = 0.0;      // guaranteed capacity: minimum across all scenarios
    double score = 0.0;      // tail-average attribution $
    double per_mwh = 0.0;    // R; 0 when not adjustable
    bool adjustable = false; // false when the tail shows no shortfall
    double fraction = 0.0;   // r in [0, 1]
    double q_adj = 0.0;
};

struct AdjustedCapacities {
    std::map<std::string, std::vector<CapacityAdjustment>> entries;  // renewable -> per-hour

    // 48-hour capacity series for commitment: adjusted values where computed,
    // forecast elsewhere.
    HourSeries as_series(const HourSeries& forecast) const;
};

// The ceil(alpha*K) highest-cost scenario indices; ties broken by ascending
// index. Requires 0 < alpha < 1 and a non-empty cost vector.
std::vector<size_t> rank_scenarios(const std::vector<double>& costs, double alpha);

// score(asset, hour) = mean attribution across the scenarios in S.
// `reports` maps scenario index -> attribution report and must cover S.
RiskScoreTable risk_scores(const std::map<size_t, AttributionReport>& reports,
                           const std::vector<size_t>& worst_set, double alpha, size_t count);

// R = score / (q_fcst - tail-mean capacity). Returns nullopt (not adjustable)
// when the denominator is at or below epsilon: scenarios showing no
// under-production trigger no adjustment.
std::optional<double> per_mwh_score(double score, double q_fcst,
                                    const std::vector<double>& tail_caps, size_t count,
                                    TailDenominator denominator = TailDenominator::OverK);

// r = clamp((R - r_low) / r_high, 0, 1).
double adjust_fraction(double per_mwh, const AdjustmentParams& params);

// q_adj = q_fcst - r * (q_fcst - q_min).
double adjust_capacity(double q_fcst, double q_min, double r);

// End-to-end scenario risk allocation: forecast UC + ED, per-scenario ED
// costs, tail selection, tail attributions, scores and capacity adjustments.
// Without an initial state, the chains cold-start on the forecast commitment.
AdjustedCapacities build_adjustments(const GridSpec& grid, const DayData& day,
                                     const ScenarioSet& scenarios, double alpha,
                                     const QuadratureConfig& qcfg, const AdjustmentParams& params,
                                     int h, const std::optional<SystemState>& initial_state = {},
                                     int jobs = 0);

void write_risk_csv(const AdjustedCapacities& adj, const std::string& path);

}  // namespace pcm

#endif
