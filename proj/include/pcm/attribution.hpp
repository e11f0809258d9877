#ifndef PCM_ATTRIBUTION_HPP
#define PCM_ATTRIBUTION_HPP

#include <map>
#include <string>
#include <vector>

#include "pcm/dispatch.hpp"
#include "pcm/grid.hpp"

namespace pcm {

// Straight path between two ED parameter bundles for one hour: the forecast
// side is the baseline, the actual (or scenario) side the target.
struct PathSpec {
    HourlyInput baseline;
    HourlyInput target;
    int tau = 0;
    int h = 1;
};

struct QuadratureConfig {
    int max_nodes = 4096;       // hard cap on ED solves per hour
    double rel_threshold = 0.05;
    int min_levels = 2;         // dyadic depth refined unconditionally

    void validate() const;
};

// Gradient of the window objective at one path point, from constraint duals.
struct GradientSample {
    double objective = 0.0;
    std::map<std::string, double> init;   // dF/d(p_prev) per dispatchable
    std::map<std::string, double> load;   // dF/d(demand) per load
    std::map<std::string, double> renew;  // dF/d(capacity) per renewable
};

struct HourAttribution {
    int tau = 0;
    double c_fcst = 0.0;  // F at the baseline endpoint
    double c_act = 0.0;   // F at the target endpoint
    std::map<std::string, double> init;   // $ per dispatchable initial state
    std::map<std::string, double> load;   // $ per load
    std::map<std::string, double> renew;  // $ per renewable
    // Path-mean gradients (the integral over [0,1]); for a renewable this is
    // its mean shadow price along the path.
    std::map<std::string, double> init_mean_gradient;
    std::map<std::string, double> load_mean_gradient;
    std::map<std::string, double> renew_mean_gradient;
    int quadrature_nodes = 0;
    double error_estimate = 0.0;
    bool budget_exhausted = false;

    double attribution_total() const;
    double residual() const { return c_act - c_fcst - attribution_total(); }
};

struct AttributionReport {
    std::string date;
    std::vector<HourAttribution> hours;
    double relative_efficiency_gap = 0.0;
    QuadratureConfig quadrature;
};

// Componentwise baseline + lambda * (target - baseline) over p_prev, demand
// and capacity; look-ahead data and the reserve basis stay at the baseline.
HourlyInput path_point(const PathSpec& spec, double lambda);

// Groups of renewable-capacity constraints that are interchangeable in the
// window LP (same bus, identical capacity at every window hour); their duals
// are averaged before gradient extraction.
std::vector<std::vector<std::string>> symmetric_renewable_groups(const GridSpec& grid,
                                                                 const HourlyInput& input,
                                                                 int tau, int h);

// Builds and solves the ED at path_point(lambda) and extracts dF/d(parameter)
// from the constraint duals (after dual symmetrization).
GradientSample gradient_at(const GridSpec& grid, const CommitmentSchedule& commit,
                           const PathSpec& spec, double lambda);

// Adaptive dyadic trapezoid over the path. Each refinement halves an interval
// whose aggregate attribution error estimate exceeds rel_threshold of the
// running total; gradient evaluations are cached by lambda so every path
// point is solved at most once. Exhausting the node budget flags the result
// instead of failing.
HourAttribution integrate(const GridSpec& grid, const CommitmentSchedule& commit,
                          const PathSpec& spec, const QuadratureConfig& qcfg);

// Runs the forecast-chained baseline sequence and the target-chained sequence
// (each hour inherits p_prev from its own chain) and integrates each hour.
AttributionReport attribute_day(const GridSpec& grid, const CommitmentSchedule& commit,
                                const DayData& day, const QuadratureConfig& qcfg, int h,
                                const SystemState& initial_state, int jobs = 1);

// max over hours of |residual| divided by max over hours of |C_act|; 0 when
// both are zero, error when only the normalizer vanishes.
double efficiency_gap(const AttributionReport& report);

// Replaces the actual series (used to attribute against a scenario).
DayData with_actual(const DayData& day, const HourSeries& actual);

// Exports. CSV rows: hour, asset id, asset class, attribution, mean shadow
// price. The JSON summary carries per-hour diagnostics and gap statistics.
void write_attribution_csv(const AttributionReport& report, const std::string& path);
void write_attribution_json(const AttributionReport& report, const std::string& path);

}  // namespace pcm

#endif
