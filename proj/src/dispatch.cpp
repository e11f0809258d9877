#include "pcm/dispatch.hpp"

#include <algorithm>
#include <cmath>

#include "pcm/errors.hpp"
#include "pcm/simplex.hpp"

namespace pcm {

namespace {

std::string key(const char* kind, const std::string& id, int hour) {
    return std::string(kind) + "@" + id + "@" + std::to_string(hour);
}

std::string key(const char* kind, int hour) {
    return std::string(kind) + "@" + std::to_string(hour);
}

}  // namespace

bool CommitmentSchedule::is_on(const std::string& gen, int hour) const {
    auto it = on_off.find(gen);
    if (it == on_off.end())
        throw DataError("commitment schedule has no generator '" + gen + "'");
    if (hour < 0 || hour >= static_cast<int>(it->second.size()))
        throw DataError("missing commitment hour " + std::to_string(hour) + " for generator '" +
                        gen + "'");
    return it->second[hour] != 0;
}

HourlyInput make_hourly_input(const GridSpec& grid, const HourSeries& point_source,
                              const HourSeries& forecast, int tau, int h,
                              const SystemState& state) {
    HourlyInput in;
    for (const auto& g : grid.dispatchables) {
        in.p_prev[g.id] = state.p_of(g.id);
        in.on_prev[g.id] = state.on_of(g.id) ? 1 : 0;
    }
    for (const auto& l : grid.loads) in.demand[l.id] = point_source.demand_at(l.id, tau);
    for (const auto& r : grid.renewables) in.capacity[r.id] = point_source.capacity_at(r.id, tau);
    for (int t = tau + 1; t <= tau + h; ++t) {
        HourlyInput::HourData hd;
        for (const auto& l : grid.loads) hd.demand[l.id] = forecast.demand_at(l.id, t);
        for (const auto& r : grid.renewables) hd.capacity[r.id] = forecast.capacity_at(r.id, t);
        in.lookahead.push_back(std::move(hd));
    }
    for (int t = tau; t <= tau + h; ++t) in.reserve_basis.push_back(forecast.total_demand(t));
    return in;
}

LinearProgram build_ed(const GridSpec& grid, const CommitmentSchedule& commit,
                       const HourlyInput& input, int tau, int h) {
    if (h < 1) throw ConfigError("build_ed: look-ahead h must be >= 1");
    if (static_cast<int>(input.lookahead.size()) < h)
        throw DataError("build_ed: missing look-ahead data: need " + std::to_string(h) +
                        " hours, have " + std::to_string(input.lookahead.size()));
    if (static_cast<int>(input.reserve_basis.size()) < h + 1)
        throw DataError("build_ed: missing reserve basis hours");

    LinearProgram lp;
    const auto& pen = grid.penalties;

    // Demand/capacity accessors for window hour t (tau-relative index k).
    auto demand_at = [&](int k, const std::string& id) -> double {
        if (k == 0) return input.demand.at(id);
        return input.lookahead[k - 1].demand.at(id);
    };
    auto capacity_at = [&](int k, const std::string& id) -> double {
        if (k == 0) return input.capacity.at(id);
        return input.lookahead[k - 1].capacity.at(id);
    };
    auto committed = [&](const std::string& gen, int t) -> bool {
        return commit.is_on(gen, t);
    };

    struct HourVars {
        std::map<std::string, int> p, r, w, shed;
        int over = -1, rsv = -1;
    };
    std::vector<HourVars> vars(h + 1);

    for (int k = 0; k <= h; ++k) {
        const int t = tau + k;
        auto& hv = vars[k];
        for (const auto& g : grid.dispatchables) {
            const bool on = committed(g.id, t);
            const double lo = on ? g.p_min : 0.0;
            const double hi = on ? g.p_max : 0.0;
            hv.p[g.id] = lp.add_variable(key("p", g.id, t), lo, hi, g.marginal_cost);
            hv.r[g.id] = lp.add_variable(key("r", g.id, t), 0.0, on ? g.ramp_up : 0.0, 0.0);
            if (on) lp.add_objective_constant(g.no_load_cost);
        }
        for (const auto& n : grid.renewables)
            hv.w[n.id] = lp.add_variable(key("w", n.id, t), 0.0, kInf, 0.0);
        for (const auto& l : grid.loads)
            hv.shed[l.id] = lp.add_variable(key("shed", l.id, t), 0.0, kInf, pen.load_mismatch);
        hv.over = lp.add_variable(key("over", t), 0.0, kInf, pen.load_mismatch);
        hv.rsv = lp.add_variable(key("rsv", t), 0.0, kInf, pen.reserve_shortfall);
    }

    for (int k = 0; k <= h; ++k) {
        const int t = tau + k;
        const auto& hv = vars[k];

        // System balance: sum p + sum w + sum shed - over = total demand.
        {
            std::vector<std::pair<int, double>> terms;
            double rhs = 0.0;
            for (const auto& g : grid.dispatchables) terms.push_back({hv.p.at(g.id), 1.0});
            for (const auto& n : grid.renewables) terms.push_back({hv.w.at(n.id), 1.0});
            for (const auto& l : grid.loads) {
                terms.push_back({hv.shed.at(l.id), 1.0});
                rhs += demand_at(k, l.id);
            }
            terms.push_back({hv.over, -1.0});
            lp.add_constraint(key("balance", t), Sense::Equal, rhs, std::move(terms));
        }

        // Renewable output limits.
        for (const auto& n : grid.renewables)
            lp.add_constraint(key("renew-cap", n.id, t), Sense::LessEqual, capacity_at(k, n.id),
                              {{hv.w.at(n.id), 1.0}});

        // Reserve headroom: p + r <= committed p_max.
        for (const auto& g : grid.dispatchables) {
            if (!committed(g.id, t)) continue;
            lp.add_constraint(key("headroom", g.id, t), Sense::LessEqual, g.p_max,
                              {{hv.p.at(g.id), 1.0}, {hv.r.at(g.id), 1.0}});
        }

        // Ramping. At t = tau the previous dispatch is a parameter on the RHS;
        // deeper window hours couple consecutive dispatch variables.
        for (const auto& g : grid.dispatchables) {
            const bool on_now = committed(g.id, t);
            const bool on_before = k == 0 ? input.on_prev.count(g.id) && input.on_prev.at(g.id)
                                          : committed(g.id, t - 1);
            if (!on_now || !on_before) continue;
            if (k == 0) {
                const double p0 = input.p_prev.count(g.id) ? input.p_prev.at(g.id) : 0.0;
                lp.add_constraint(key("ramp-up", g.id, t), Sense::LessEqual, g.ramp_up + p0,
                                  {{hv.p.at(g.id), 1.0}});
                lp.add_constraint(key("ramp-down", g.id, t), Sense::LessEqual, g.ramp_down - p0,
                                  {{hv.p.at(g.id), -1.0}});
            } else {
                const int prev = vars[k - 1].p.at(g.id);
                lp.add_constraint(key("ramp-up", g.id, t), Sense::LessEqual, g.ramp_up,
                                  {{hv.p.at(g.id), 1.0}, {prev, -1.0}});
                lp.add_constraint(key("ramp-down", g.id, t), Sense::LessEqual, g.ramp_down,
                                  {{hv.p.at(g.id), -1.0}, {prev, 1.0}});
            }
        }

        // Line limits via PTDF on bus net injections. Parameters (demands)
        // are folded into the RHS; shed at a bus offsets its withdrawal.
        for (const auto& line : grid.lines) {
            std::vector<std::pair<int, double>> flow;
            double demand_term = 0.0;
            for (const auto& g : grid.dispatchables) {
                const double f = line.ptdf_at(g.bus);
                if (f != 0.0) flow.push_back({hv.p.at(g.id), f});
            }
            for (const auto& n : grid.renewables) {
                const double f = line.ptdf_at(n.bus);
                if (f != 0.0) flow.push_back({hv.w.at(n.id), f});
            }
            for (const auto& l : grid.loads) {
                const double f = line.ptdf_at(l.bus);
                if (f == 0.0) continue;
                flow.push_back({hv.shed.at(l.id), f});
                demand_term += f * demand_at(k, l.id);
            }
            auto negated = flow;
            for (auto& [j, c] : negated) c = -c;
            lp.add_constraint(key("line+", line.id, t), Sense::LessEqual,
                              line.flow_limit + demand_term, std::move(flow));
            lp.add_constraint(key("line-", line.id, t), Sense::LessEqual,
                              line.flow_limit - demand_term, std::move(negated));
        }

        // Spinning reserve sized on the forecast system demand.
        {
            std::vector<std::pair<int, double>> terms;
            for (const auto& g : grid.dispatchables) terms.push_back({hv.r.at(g.id), 1.0});
            terms.push_back({hv.rsv, 1.0});
            lp.add_constraint(key("reserve", t), Sense::GreaterEqual,
                              grid.reserve_factor * input.reserve_basis[k], std::move(terms));
        }
    }

    lp.validate();
    return lp;
}

DispatchOutcome solve_ed(const GridSpec& grid, const CommitmentSchedule& commit,
                         const HourlyInput& input, int tau, int h) {
    const LinearProgram lp = build_ed(grid, commit, input, tau, h);
    SimplexSolver solver;
    LpSolution sol = solver.solve(lp);
    if (sol.status != SolveStatus::Optimal)
        throw SolveError("ED at hour " + std::to_string(tau) + " is " + to_string(sol.status) +
                         ": malformed model");

    DispatchOutcome out;
    out.cost = sol.objective;
    for (const auto& g : grid.dispatchables) {
        out.dispatch[g.id] = sol.primal_of(lp, key("p", g.id, tau));
        if (commit.is_on(g.id, tau)) out.hour_cost += g.no_load_cost;
        out.hour_cost += g.marginal_cost * out.dispatch[g.id];
    }
    for (const auto& n : grid.renewables)
        out.renewable_used[n.id] = sol.primal_of(lp, key("w", n.id, tau));
    double shed_total = 0.0;
    for (const auto& l : grid.loads) {
        out.shed[l.id] = sol.primal_of(lp, key("shed", l.id, tau));
        shed_total += out.shed[l.id];
    }
    out.over_gen = sol.primal_of(lp, key("over", tau));
    out.reserve_shortfall = sol.primal_of(lp, key("rsv", tau));
    out.hour_cost += grid.penalties.load_mismatch * (shed_total + out.over_gen) +
                     grid.penalties.reserve_shortfall * out.reserve_shortfall;
    out.solution = std::move(sol);
    return out;
}

SystemState DispatchOutcome::next_state(const CommitmentSchedule& commit, int tau) const {
    SystemState s;
    for (const auto& [gen, p] : dispatch) {
        s.p_prev[gen] = p;
        s.on_prev[gen] = commit.is_on(gen, tau) ? 1 : 0;
    }
    return s;
}

CommitmentSchedule commit_units(const GridSpec& grid, const HourSeries& forecast,
                                double reserve_factor,
                                const std::optional<HourSeries>& adjusted_capacity) {
    constexpr int kHours = 48;
    if (forecast.hours() < kHours)
        throw DataError("commit_units: forecast must cover 48 hours, have " +
                        std::to_string(forecast.hours()));

    // Merit order: ascending cost, ties by id, independent of list order.
    std::vector<const DispatchableGen*> order;
    for (const auto& g : grid.dispatchables) order.push_back(&g);
    std::sort(order.begin(), order.end(), [](const DispatchableGen* a, const DispatchableGen* b) {
        if (a->marginal_cost != b->marginal_cost) return a->marginal_cost < b->marginal_cost;
        return a->id < b->id;
    });

    CommitmentSchedule commit;
    for (const auto& g : grid.dispatchables)
        commit.on_off[g.id] = std::vector<uint8_t>(kHours, 0);

    for (int t = 0; t < kHours; ++t) {
        double renew = 0.0;
        for (const auto& [id, v] : forecast.capacity) {
            double q = v[t];
            if (adjusted_capacity) {
                auto it = adjusted_capacity->capacity.find(id);
                if (it != adjusted_capacity->capacity.end() &&
                    t < static_cast<int>(it->second.size()))
                    q = it->second[t];
            }
            renew += q;
        }
        const double target =
            (1.0 + reserve_factor) * std::max(0.0, forecast.total_demand(t) - renew);

        double committed_cap = 0.0;
        for (const auto* g : order) {
            if (g->must_run) {
                commit.on_off[g->id][t] = 1;
                committed_cap += g->p_max;
            }
        }
        for (const auto* g : order) {
            if (committed_cap >= target) break;
            if (commit.on_off[g->id][t]) continue;
            commit.on_off[g->id][t] = 1;
            committed_cap += g->p_max;
        }
    }

    // Repair run-length rules by extending on-blocks forward. Interior gaps
    // shorter than min_down are filled; blocks shorter than min_up are
    // lengthened (clipped at the horizon, treated as continuing past it).
    for (const auto& g : grid.dispatchables) {
        auto& row = commit.on_off[g.id];
        bool changed = true;
        while (changed) {
            changed = false;
            int t = 0;
            while (t < kHours && !changed) {
                if (!row[t]) {
                    ++t;
                    continue;
                }
                int end = t;
                while (end < kHours && row[end]) ++end;
                const int run = end - t;
                if (run < g.min_up && end < kHours) {
                    const int extend_to = std::min(kHours, t + g.min_up);
                    for (int u = end; u < extend_to; ++u) row[u] = 1;
                    changed = true;
                    break;
                }
                // Interior off-gap after this block?
                int gap_end = end;
                while (gap_end < kHours && !row[gap_end]) ++gap_end;
                if (gap_end < kHours && gap_end - end > 0 && gap_end - end < g.min_down) {
                    for (int u = end; u < gap_end; ++u) row[u] = 1;
                    changed = true;
                    break;
                }
                t = end;
            }
        }
    }
    return commit;
}

SystemState cold_start_state(const GridSpec& grid, const CommitmentSchedule& commit) {
    SystemState s;
    for (const auto& g : grid.dispatchables) {
        const bool on = commit.is_on(g.id, 0);
        s.p_prev[g.id] = on ? g.p_min : 0.0;
        s.on_prev[g.id] = on ? 1 : 0;
    }
    return s;
}

}  // namespace pcm
