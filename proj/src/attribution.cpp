#include "pcm/attribution.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

#include "pcm/errors.hpp"
#include "pcm/parallel.hpp"
#include "pcm/simplex.hpp"
#include "pcm/text.hpp"

namespace pcm {

void QuadratureConfig::validate() const {
    if (max_nodes < 3) throw ConfigError("quadrature: max_nodes must be >= 3");
    if (rel_threshold <= 0) throw ConfigError("quadrature: rel_threshold must be > 0");
    if (min_levels < 1) throw ConfigError("quadrature: min_levels must be >= 1");
}

double HourAttribution::attribution_total() const {
    double total = 0.0;
    for (const auto& [id, v] : init) total += v;
    for (const auto& [id, v] : load) total += v;
    for (const auto& [id, v] : renew) total += v;
    return total;
}

HourlyInput path_point(const PathSpec& spec, double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw ConfigError("path_point: lambda " + fmt_double(lambda) + " outside [0, 1]");
    HourlyInput p = spec.baseline;
    auto lerp = [lambda](std::map<std::string, double>& out,
                         const std::map<std::string, double>& target) {
        for (auto& [id, v] : out) {
            auto it = target.find(id);
            if (it == target.end())
                throw DataError("path_point: target missing asset '" + id + "'");
            v = v + lambda * (it->second - v);
        }
    };
    lerp(p.p_prev, spec.target.p_prev);
    lerp(p.demand, spec.target.demand);
    lerp(p.capacity, spec.target.capacity);
    return p;
}

std::vector<std::vector<std::string>> symmetric_renewable_groups(const GridSpec& grid,
                                                                 const HourlyInput& input,
                                                                 int tau, int h) {
    // Profile = bus plus the exact capacity pattern over the window; only
    // bit-identical profiles are interchangeable in the LP.
    std::map<std::string, std::vector<std::string>> by_profile;
    for (const auto& n : grid.renewables) {
        std::string profile = n.bus;
        profile += '|';
        profile += fmt_double(input.capacity.at(n.id));
        for (int k = 1; k <= h; ++k) {
            profile += '|';
            profile += fmt_double(input.lookahead[k - 1].capacity.at(n.id));
        }
        by_profile[profile].push_back(n.id);
    }
    std::vector<std::vector<std::string>> groups;
    for (const auto& [profile, ids] : by_profile) {
        if (ids.size() < 2) continue;
        for (int k = 0; k <= h; ++k) {
            std::vector<std::string> g;
            for (const auto& id : ids)
                g.push_back("renew-cap@" + id + "@" + std::to_string(tau + k));
            groups.push_back(std::move(g));
        }
    }
    return groups;
}

namespace {

GradientSample extract_gradients(const GridSpec& grid, const LinearProgram& lp,
                                 const LpSolution& sol, const HourlyInput& input, int tau, int h) {
    const LpSolution sym = symmetrize_duals(
        lp, sol, symmetric_renewable_groups(grid, input, tau, h));

    ParamMap params;
    for (const auto& n : grid.renewables)
        params["q:" + n.id] = {{"renew-cap@" + n.id + "@" + std::to_string(tau), 1.0}};
    for (const auto& l : grid.loads) {
        std::vector<std::pair<std::string, double>> entries;
        entries.push_back({"balance@" + std::to_string(tau), 1.0});
        for (const auto& line : grid.lines) {
            const double f = line.ptdf_at(l.bus);
            if (f == 0.0) continue;
            entries.push_back({"line+@" + line.id + "@" + std::to_string(tau), f});
            entries.push_back({"line-@" + line.id + "@" + std::to_string(tau), -f});
        }
        params["d:" + l.id] = std::move(entries);
    }
    for (const auto& g : grid.dispatchables) {
        const std::string up = "ramp-up@" + g.id + "@" + std::to_string(tau);
        const std::string down = "ramp-down@" + g.id + "@" + std::to_string(tau);
        if (lp.has_constraint(up))
            params["p:" + g.id] = {{up, 1.0}, {down, -1.0}};
    }

    const auto grads = rhs_gradient(lp, sym, params);
    GradientSample s;
    s.objective = sol.objective;
    for (const auto& g : grid.dispatchables) {
        auto it = grads.find("p:" + g.id);
        s.init[g.id] = it == grads.end() ? 0.0 : it->second;
    }
    for (const auto& l : grid.loads) s.load[l.id] = grads.at("d:" + l.id);
    for (const auto& n : grid.renewables) s.renew[n.id] = grads.at("q:" + n.id);
    return s;
}

double map_dot_abs(const std::map<std::string, double>& delta,
                   const std::map<std::string, double>& a, const std::map<std::string, double>& b,
                   const std::map<std::string, double>& c) {
    // sum over assets of |delta| * |g(a) - 2 g(m) + g(b)| / 4
    double total = 0.0;
    for (const auto& [id, d] : delta) {
        if (d == 0.0) continue;
        total += std::abs(d) * std::abs(a.at(id) - 2.0 * b.at(id) + c.at(id)) / 4.0;
    }
    return total;
}

struct DeltaMaps {
    std::map<std::string, double> init, load, renew;
    bool all_zero = true;
};

DeltaMaps deltas_of(const PathSpec& spec) {
    DeltaMaps d;
    auto fill = [&](const std::map<std::string, double>& base,
                    const std::map<std::string, double>& tgt,
                    std::map<std::string, double>& out) {
        for (const auto& [id, v] : base) {
            auto it = tgt.find(id);
            if (it == tgt.end()) throw DataError("path target missing asset '" + id + "'");
            out[id] = it->second - v;
            if (out[id] != 0.0) d.all_zero = false;
        }
    };
    fill(spec.baseline.p_prev, spec.target.p_prev, d.init);
    fill(spec.baseline.demand, spec.target.demand, d.load);
    fill(spec.baseline.capacity, spec.target.capacity, d.renew);
    return d;
}

}  // namespace

GradientSample gradient_at(const GridSpec& grid, const CommitmentSchedule& commit,
                           const PathSpec& spec, double lambda) {
    const HourlyInput input = path_point(spec, lambda);
    const LinearProgram lp = build_ed(grid, commit, input, spec.tau, spec.h);
    SimplexSolver solver;
    LpSolution sol;
    try {
        sol = solver.solve(lp);
    } catch (const SolveError& e) {
        throw SolveError("gradient_at lambda=" + fmt_double(lambda) + ": " + e.what());
    }
    if (sol.status != SolveStatus::Optimal)
        throw SolveError("gradient_at lambda=" + fmt_double(lambda) + ": ED is " +
                         std::string(to_string(sol.status)));
    return extract_gradients(grid, lp, sol, input, spec.tau, spec.h);
}

HourAttribution integrate(const GridSpec& grid, const CommitmentSchedule& commit,
                          const PathSpec& spec, const QuadratureConfig& qcfg) {
    qcfg.validate();
    const DeltaMaps delta = deltas_of(spec);

    HourAttribution out;
    out.tau = spec.tau;
    for (const auto& [id, d] : delta.init) out.init[id] = 0.0;
    for (const auto& [id, d] : delta.load) out.load[id] = 0.0;
    for (const auto& [id, d] : delta.renew) out.renew[id] = 0.0;

    // Null path: zero deltas multiply every integral, so attributions are
    // exactly zero and one endpoint solve pins both cost values.
    if (delta.all_zero) {
        const GradientSample s = gradient_at(grid, commit, spec, 0.0);
        out.c_fcst = out.c_act = s.objective;
        out.init_mean_gradient = s.init;
        out.load_mean_gradient = s.load;
        out.renew_mean_gradient = s.renew;
        out.quadrature_nodes = 1;
        return out;
    }

    std::map<double, GradientSample> samples;  // dyadic lambdas are exact doubles
    int nodes = 0;
    auto eval = [&](double lambda) -> const GradientSample& {
        auto it = samples.find(lambda);
        if (it != samples.end()) return it->second;
        ++nodes;
        return samples.emplace(lambda, gradient_at(grid, commit, spec, lambda)).first->second;
    };

    const GradientSample& s0 = eval(0.0);
    const double f0 = s0.objective;
    eval(1.0);
    eval(0.5);

    struct Interval {
        double a, b;
        int depth;
        double inherited_err;  // half the parent's measured error
    };
    std::deque<Interval> queue{{0.0, 0.5, 1, kInf}, {0.5, 1.0, 1, kInf}};

    auto aggregate_total = [&]() {
        double total = 0.0;
        auto prev = samples.begin();
        for (auto it = std::next(samples.begin()); it != samples.end(); ++it, ++prev) {
            const double len = it->first - prev->first;
            for (const auto& [id, d] : delta.init)
                total += d * 0.5 * (prev->second.init.at(id) + it->second.init.at(id)) * len;
            for (const auto& [id, d] : delta.load)
                total += d * 0.5 * (prev->second.load.at(id) + it->second.load.at(id)) * len;
            for (const auto& [id, d] : delta.renew)
                total += d * 0.5 * (prev->second.renew.at(id) + it->second.renew.at(id)) * len;
        }
        return total;
    };

    while (!queue.empty()) {
        const Interval iv = queue.front();
        queue.pop_front();
        if (nodes + 1 > qcfg.max_nodes) {
            out.budget_exhausted = true;
            if (iv.inherited_err < kInf) out.error_estimate += iv.inherited_err;
            continue;
        }
        const double mid = 0.5 * (iv.a + iv.b);
        const GradientSample& sa = samples.at(iv.a);
        const GradientSample& sm = eval(mid);
        const GradientSample& sb = samples.at(iv.b);

        const double len = iv.b - iv.a;
        const double err = (map_dot_abs(delta.init, sa.init, sm.init, sb.init) +
                            map_dot_abs(delta.load, sa.load, sm.load, sb.load) +
                            map_dot_abs(delta.renew, sa.renew, sm.renew, sb.renew)) *
                           len;
        const double scale =
            std::max(std::abs(aggregate_total()), 1e-9 * std::max(1.0, std::abs(f0)));
        if (iv.depth < qcfg.min_levels || err > qcfg.rel_threshold * scale) {
            queue.push_back({iv.a, mid, iv.depth + 1, err / 2});
            queue.push_back({mid, iv.b, iv.depth + 1, err / 2});
        } else {
            out.error_estimate += err;
        }
    }

    // Final trapezoid over every evaluated node.
    auto integral_of = [&](const std::map<std::string, double>& deltas, auto field,
                           std::map<std::string, double>& attr,
                           std::map<std::string, double>& mean) {
        for (const auto& [id, d] : deltas) {
            double integral = 0.0;
            auto prev = samples.begin();
            for (auto it = std::next(samples.begin()); it != samples.end(); ++it, ++prev) {
                const double len = it->first - prev->first;
                integral += 0.5 * (field(prev->second).at(id) + field(it->second).at(id)) * len;
            }
            mean[id] = integral;
            attr[id] = d * integral;
        }
    };
    integral_of(delta.init, [](const GradientSample& s) -> const auto& { return s.init; },
                out.init, out.init_mean_gradient);
    integral_of(delta.load, [](const GradientSample& s) -> const auto& { return s.load; },
                out.load, out.load_mean_gradient);
    integral_of(delta.renew, [](const GradientSample& s) -> const auto& { return s.renew; },
                out.renew, out.renew_mean_gradient);

    out.c_fcst = samples.at(0.0).objective;
    out.c_act = samples.at(1.0).objective;
    out.quadrature_nodes = nodes;
    return out;
}

AttributionReport attribute_day(const GridSpec& grid, const CommitmentSchedule& commit,
                                const DayData& day, const QuadratureConfig& qcfg, int h,
                                const SystemState& initial_state, int jobs) {
    qcfg.validate();
    validate_day(grid, day, h);

    // The two chains advance sequentially (each hour inherits its own chain's
    // optimal dispatch); the per-hour integrations then run independently.
    std::vector<PathSpec> paths;
    paths.reserve(24);
    SystemState base_state = initial_state;
    SystemState target_state = initial_state;
    for (int tau = 0; tau < 24; ++tau) {
        PathSpec spec;
        spec.tau = tau;
        spec.h = h;
        spec.baseline = make_hourly_input(grid, day.forecast, day.forecast, tau, h, base_state);
        spec.target = make_hourly_input(grid, day.actual, day.forecast, tau, h, target_state);
        const DispatchOutcome base_out = solve_ed(grid, commit, spec.baseline, tau, h);
        const DispatchOutcome target_out = solve_ed(grid, commit, spec.target, tau, h);
        base_state = base_out.next_state(commit, tau);
        target_state = target_out.next_state(commit, tau);
        paths.push_back(std::move(spec));
    }

    AttributionReport report;
    report.date = day.date;
    report.quadrature = qcfg;
    report.hours.resize(24);
    parallel_for(24, jobs, [&](size_t tau) {
        report.hours[tau] = integrate(grid, commit, paths[tau], qcfg);
    });
    report.relative_efficiency_gap = efficiency_gap(report);
    return report;
}

double efficiency_gap(const AttributionReport& report) {
    double num = 0.0, den = 0.0;
    for (const auto& hr : report.hours) {
        num = std::max(num, std::abs(hr.residual()));
        den = std::max(den, std::abs(hr.c_act));
    }
    if (den == 0.0) {
        if (num == 0.0) return 0.0;
        throw DataError("efficiency_gap: degenerate normalizer (all C_act are zero)");
    }
    return num / den;
}

DayData with_actual(const DayData& day, const HourSeries& actual) {
    DayData out = day;
    out.actual = actual;
    return out;
}

void write_attribution_csv(const AttributionReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "hour,asset,class,attribution,shadow_price_mean\n";
    for (const auto& hr : report.hours) {
        for (const auto& [id, v] : hr.init)
            out << hr.tau << "," << id << ",dispatchable," << fmt_double(v) << ","
                << fmt_double(hr.init_mean_gradient.at(id)) << "\n";
        for (const auto& [id, v] : hr.load)
            out << hr.tau << "," << id << ",load," << fmt_double(v) << ","
                << fmt_double(hr.load_mean_gradient.at(id)) << "\n";
        for (const auto& [id, v] : hr.renew)
            out << hr.tau << "," << id << ",renewable," << fmt_double(v) << ","
                << fmt_double(hr.renew_mean_gradient.at(id)) << "\n";
    }
}

void write_attribution_json(const AttributionReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "{\n";
    out << "  \"date\": \"" << report.date << "\",\n";
    out << "  \"relative_efficiency_gap\": " << fmt_double(report.relative_efficiency_gap)
        << ",\n";
    out << "  \"quadrature\": {\"max_nodes\": " << report.quadrature.max_nodes
        << ", \"rel_threshold\": " << fmt_double(report.quadrature.rel_threshold)
        << ", \"min_levels\": " << report.quadrature.min_levels << "},\n";
    out << "  \"hours\": [\n";
    for (size_t i = 0; i < report.hours.size(); ++i) {
        const auto& hr = report.hours[i];
        out << "    {\"hour\": " << hr.tau << ", \"c_fcst\": " << fmt_double(hr.c_fcst)
            << ", \"c_act\": " << fmt_double(hr.c_act)
            << ", \"attribution_total\": " << fmt_double(hr.attribution_total())
            << ", \"residual\": " << fmt_double(hr.residual())
            << ", \"quadrature_nodes\": " << hr.quadrature_nodes
            << ", \"error_estimate\": " << fmt_double(hr.error_estimate)
            << ", \"budget_exhausted\": " << (hr.budget_exhausted ? "true" : "false") << "}"
            << (i + 1 < report.hours.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

}  // namespace pcm
