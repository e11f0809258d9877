#include "pcm/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/text.hpp"

namespace pcm {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kMaxIterations = 200000;

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

struct Tableau {
    int n_rows = 0;
    int n_cols = 0;        // structural + slack + artificial
    int n_structural = 0;
    int first_artificial = 0;
    Eigen::MatrixXd a;     // equality form, n_rows x n_cols
    Eigen::VectorXd b;
    Eigen::VectorXd cost;  // current objective (phase 1 or 2)
    Eigen::VectorXd real_cost;
    std::vector<double> lower, upper;
    std::vector<VarState> state;
    std::vector<double> x;
    std::vector<int> basis;  // column index per row

    double value_at_bound(int j) const {
        switch (state[j]) {
            case VarState::AtLower: return lower[j];
            case VarState::AtUpper: return upper[j];
            default: return 0.0;
        }
    }
};

Tableau build_tableau(const LinearProgram& lp) {
    const int n = static_cast<int>(lp.variables().size());
    const int m = static_cast<int>(lp.constraints().size());
    int n_slack = 0;
    for (const auto& c : lp.constraints())
        if (c.sense != Sense::Equal) ++n_slack;

    Tableau t;
    t.n_rows = m;
    t.n_structural = n;
    t.first_artificial = n + n_slack;
    t.n_cols = n + n_slack + m;
    t.a = Eigen::MatrixXd::Zero(m, t.n_cols);
    t.b = Eigen::VectorXd::Zero(m);
    t.real_cost = Eigen::VectorXd::Zero(t.n_cols);
    t.lower.assign(t.n_cols, 0.0);
    t.upper.assign(t.n_cols, kInf);
    t.state.assign(t.n_cols, VarState::AtLower);
    t.x.assign(t.n_cols, 0.0);

    for (int j = 0; j < n; ++j) {
        const auto& v = lp.variables()[j];
        t.lower[j] = v.lower;
        t.upper[j] = v.upper;
        t.real_cost[j] = v.objective;
        if (v.lower > -kInf) {
            t.state[j] = VarState::AtLower;
            t.x[j] = v.lower;
        } else if (v.upper < kInf) {
            t.state[j] = VarState::AtUpper;
            t.x[j] = v.upper;
        } else {
            t.state[j] = VarState::FreeZero;
            t.x[j] = 0.0;
        }
    }

    int slack = n;
    for (int i = 0; i < m; ++i) {
        const auto& c = lp.constraints()[i];
        for (const auto& [j, coef] : c.terms) t.a(i, j) += coef;
        t.b(i) = c.rhs;
        if (c.sense == Sense::LessEqual) {
            t.a(i, slack) = 1.0;
            ++slack;
        } else if (c.sense == Sense::GreaterEqual) {
            t.a(i, slack) = -1.0;
            ++slack;
        }
    }
    return t;
}

struct Pricing {
    int entering = -1;
    int direction = 0;  // +1 moves up from lower/free, -1 moves down from upper/free
};

// Bland: smallest-index candidate with a favourable reduced cost.
Pricing price(const Tableau& t, const Eigen::VectorXd& y) {
    for (int j = 0; j < t.n_cols; ++j) {
        if (t.state[j] == VarState::Basic) continue;
        if (t.upper[j] - t.lower[j] <= 0.0) continue;  // fixed, never enters
        const double d = t.cost(j) - y.dot(t.a.col(j));
        if (t.state[j] == VarState::AtLower && d < -kCostTol) return {j, +1};
        if (t.state[j] == VarState::AtUpper && d > kCostTol) return {j, -1};
        if (t.state[j] == VarState::FreeZero && std::abs(d) > kCostTol)
            return {j, d < 0 ? +1 : -1};
    }
    return {};
}

struct SimplexOutcome {
    SolveStatus status = SolveStatus::Optimal;
    int iterations = 0;
};

// Runs pivots until the current cost vector is optimal, the LP is detected
// unbounded, or the iteration cap trips.
SimplexOutcome run_simplex(Tableau& t, int iteration_budget) {
    const int m = t.n_rows;
    SimplexOutcome out;
    Eigen::VectorXd y(m), w(m), cb(m), rhs_effective(m);

    for (out.iterations = 0; out.iterations < iteration_budget; ++out.iterations) {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu;
        if (m > 0) {
            Eigen::MatrixXd basis_mat(m, m);
            for (int r = 0; r < m; ++r) basis_mat.col(r) = t.a.col(t.basis[r]);
            lu.compute(basis_mat);

            rhs_effective = t.b;
            for (int j = 0; j < t.n_cols; ++j)
                if (t.state[j] != VarState::Basic && t.x[j] != 0.0)
                    rhs_effective -= t.a.col(j) * t.x[j];
            const Eigen::VectorXd xb = lu.solve(rhs_effective);
            for (int r = 0; r < m; ++r) t.x[t.basis[r]] = xb(r);

            for (int r = 0; r < m; ++r) cb(r) = t.cost(t.basis[r]);
            y = lu.transpose().solve(cb);
        } else {
            y.resize(0);
        }

        const Pricing p = price(t, y);
        if (p.entering < 0) return out;  // optimal for current costs

        if (m > 0)
            w = lu.solve(t.a.col(p.entering));
        else
            w.resize(0);

        // Ratio test: first bound hit by a basic variable or by the entering
        // variable itself. Ties resolved by smallest variable index (Bland).
        double t_max = kInf;
        int leave_row = -1;       // -1 means bound flip of the entering variable
        int leave_var = -1;
        double own_range = t.upper[p.entering] - t.lower[p.entering];
        if (own_range < kInf) {
            t_max = own_range;
            leave_var = p.entering;
        }
        for (int r = 0; r < m; ++r) {
            const int k = t.basis[r];
            const double step = p.direction * w(r);  // basic value changes by -step * tau
            double limit = kInf;
            if (step > kPivotTol && t.lower[k] > -kInf)
                limit = (t.x[k] - t.lower[k]) / step;
            else if (step < -kPivotTol && t.upper[k] < kInf)
                limit = (t.upper[k] - t.x[k]) / (-step);
            if (limit < -1e-12) limit = 0.0;
            if (limit < t_max - 1e-12 || (limit < t_max + 1e-12 && (leave_var < 0 || k < leave_var))) {
                t_max = std::max(limit, 0.0);
                leave_row = r;
                leave_var = k;
            }
        }

        if (t_max == kInf) {
            out.status = SolveStatus::Unbounded;
            return out;
        }

        // Apply the step.
        for (int r = 0; r < m; ++r) t.x[t.basis[r]] -= p.direction * w(r) * t_max;
        t.x[p.entering] = t.value_at_bound(p.entering) + p.direction * t_max;

        if (leave_row < 0 || leave_var == p.entering) {
            // Bound flip: entering variable moved to its opposite bound.
            t.state[p.entering] =
                p.direction > 0 ? VarState::AtUpper : VarState::AtLower;
            t.x[p.entering] = t.value_at_bound(p.entering);
        } else {
            const int k = t.basis[leave_row];
            const double step = p.direction * w(leave_row);
            if (step > 0) {
                t.state[k] = VarState::AtLower;
                t.x[k] = t.lower[k];
            } else {
                t.state[k] = VarState::AtUpper;
                t.x[k] = t.upper[k];
            }
            t.basis[leave_row] = p.entering;
            t.state[p.entering] = VarState::Basic;
        }
    }
    throw SolveError("simplex iteration limit exceeded");
}

}  // namespace

LpSolution SimplexSolver::solve(const LinearProgram& lp) {
    lp.validate();
    Tableau t = build_tableau(lp);
    const int m = t.n_rows;
    const int n = t.n_structural;

    // Phase 1: artificial basis absorbing the initial residual.
    t.basis.resize(m);
    Eigen::VectorXd residual = t.b;
    for (int j = 0; j < t.first_artificial; ++j)
        if (t.x[j] != 0.0) residual -= t.a.col(j) * t.x[j];
    t.cost = Eigen::VectorXd::Zero(t.n_cols);
    for (int i = 0; i < m; ++i) {
        const int aj = t.first_artificial + i;
        t.a(i, aj) = residual(i) >= 0 ? 1.0 : -1.0;
        t.basis[i] = aj;
        t.state[aj] = VarState::Basic;
        t.x[aj] = std::abs(residual(i));
        t.cost(aj) = 1.0;
    }

    LpSolution sol;
    const SimplexOutcome phase1 = run_simplex(t, kMaxIterations);
    sol.iterations = phase1.iterations;
    if (phase1.status == SolveStatus::Unbounded)
        throw SolveError("phase 1 unbounded: malformed model");

    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i) infeasibility += std::abs(t.x[t.first_artificial + i]);
    double b_scale = 1.0;
    for (int i = 0; i < m; ++i) b_scale = std::max(b_scale, std::abs(t.b(i)));
    if (infeasibility > tol_.feasibility * b_scale) {
        sol.status = SolveStatus::Infeasible;
        return sol;
    }

    // Phase 2: pin artificials at zero and restore the real objective.
    for (int i = 0; i < m; ++i) {
        const int aj = t.first_artificial + i;
        t.lower[aj] = t.upper[aj] = 0.0;
        if (t.state[aj] != VarState::Basic) {
            t.state[aj] = VarState::AtLower;
            t.x[aj] = 0.0;
        }
    }
    t.cost = t.real_cost;
    const SimplexOutcome phase2 = run_simplex(t, kMaxIterations);
    sol.iterations += phase2.iterations;
    if (phase2.status == SolveStatus::Unbounded) {
        sol.status = SolveStatus::Unbounded;
        return sol;
    }

    // Extract primal, duals and reduced costs from the final basis.
    sol.status = SolveStatus::Optimal;
    sol.primal.assign(n, 0.0);
    for (int j = 0; j < n; ++j) sol.primal[j] = t.x[j];

    sol.objective = lp.objective_constant();
    for (int j = 0; j < n; ++j) sol.objective += t.real_cost(j) * t.x[j];

    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    if (m > 0) {
        Eigen::MatrixXd basis_mat(m, m);
        Eigen::VectorXd cb(m);
        for (int r = 0; r < m; ++r) {
            basis_mat.col(r) = t.a.col(t.basis[r]);
            cb(r) = t.real_cost(t.basis[r]);
        }
        y = basis_mat.transpose().partialPivLu().solve(cb);
    }
    sol.duals.assign(m, 0.0);
    for (int i = 0; i < m; ++i) sol.duals[i] = y(i);

    sol.reduced_costs.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
        sol.reduced_costs[j] =
            t.state[j] == VarState::Basic ? 0.0 : t.real_cost(j) - y.dot(t.a.col(j));

    // Invariant checks: feasibility, duality gap, complementary slackness.
    const double obj_scale = 1.0 + std::abs(sol.objective);
    for (int j = 0; j < n; ++j) {
        const auto& v = lp.variables()[j];
        if (sol.primal[j] < v.lower - tol_.feasibility * (1 + std::abs(v.lower)) ||
            sol.primal[j] > v.upper + tol_.feasibility * (1 + std::abs(v.upper)))
            throw SolveError("solution violates bounds of variable '" + v.id + "'");
    }
    for (int i = 0; i < m; ++i) {
        const auto& c = lp.constraints()[i];
        double activity = 0.0;
        for (const auto& [j, coef] : c.terms) activity += coef * sol.primal[j];
        const double viol = activity - c.rhs;
        const double tol = tol_.feasibility * (1 + std::abs(c.rhs));
        if ((c.sense == Sense::LessEqual && viol > tol) ||
            (c.sense == Sense::GreaterEqual && viol < -tol) ||
            (c.sense == Sense::Equal && std::abs(viol) > tol))
            throw SolveError("solution violates constraint '" + c.id + "' by " + fmt_double(viol));
    }
    double dual_objective = lp.objective_constant() + y.dot(t.b);
    for (int j = 0; j < t.n_cols; ++j) {
        if (t.state[j] == VarState::Basic || t.x[j] == 0.0) continue;
        const double d = t.real_cost(j) - y.dot(t.a.col(j));
        dual_objective += d * t.x[j];
    }
    if (std::abs(dual_objective - sol.objective) > tol_.duality_gap * obj_scale)
        throw SolveError("duality gap " + fmt_double(dual_objective - sol.objective) +
                         " exceeds tolerance");
    for (int j = 0; j < n; ++j) {
        if (t.state[j] == VarState::Basic) continue;
        const double d = sol.reduced_costs[j];
        const double slack_low = sol.primal[j] - lp.variables()[j].lower;
        const double slack_up = lp.variables()[j].upper - sol.primal[j];
        const double gap = std::min(std::abs(slack_low), std::abs(slack_up));
        if (std::abs(d) > kCostTol && gap > tol_.complementary_slackness * (1 + std::abs(sol.primal[j])))
            throw SolveError("complementary slackness violated at variable '" +
                             lp.variables()[j].id + "'");
    }
    return sol;
}

}  // namespace pcm
