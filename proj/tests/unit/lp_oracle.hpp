#ifndef PCM_TESTS_LP_ORACLE_HPP
#define PCM_TESTS_LP_ORACLE_HPP

// Brute-force LP oracle, independent of the simplex implementation: every
// basic point comes from fixing a subset of variables at their bounds and
// intersecting the remaining space with constraint rows taken as equalities.
// For LPs whose variables all have finite bounds the feasible set is a
// polytope, so feasibility and the optimum are decided by its vertices.

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "pcm/lp.hpp"
#include "pcm/rng.hpp"

namespace pcm::testing {

struct OracleResult {
    bool feasible = false;
    double objective = std::numeric_limits<double>::infinity();
};

inline bool oracle_point_feasible(const LinearProgram& lp, const Eigen::VectorXd& x, double tol) {
    const auto& vars = lp.variables();
    for (size_t j = 0; j < vars.size(); ++j) {
        if (x(j) < vars[j].lower - tol || x(j) > vars[j].upper + tol) return false;
    }
    for (const auto& c : lp.constraints()) {
        double activity = 0.0;
        for (const auto& [j, coef] : c.terms) activity += coef * x(j);
        const double tol_row = tol * (1 + std::abs(c.rhs));
        if (c.sense == Sense::LessEqual && activity > c.rhs + tol_row) return false;
        if (c.sense == Sense::GreaterEqual && activity < c.rhs - tol_row) return false;
        if (c.sense == Sense::Equal && std::abs(activity - c.rhs) > tol_row) return false;
    }
    return true;
}

inline OracleResult brute_force_min(const LinearProgram& lp, double tol = 1e-7) {
    const int n = static_cast<int>(lp.variables().size());
    const int m = static_cast<int>(lp.constraints().size());
    OracleResult best;

    // Enumerate which variables are pinned at a bound (two choices each) and
    // which rows close the remaining degrees of freedom.
    std::vector<int> row_subset;
    std::vector<int> free_vars;

    const int total_masks = 1 << n;
    for (int mask = 0; mask < total_masks; ++mask) {
        free_vars.clear();
        for (int j = 0; j < n; ++j)
            if (!(mask & (1 << j))) free_vars.push_back(j);
        const int need_rows = static_cast<int>(free_vars.size());
        if (need_rows > m) continue;

        const int pinned = n - need_rows;
        for (int bound_pick = 0; bound_pick < (1 << pinned); ++bound_pick) {
            Eigen::VectorXd x(n);
            bool bound_ok = true;
            int bp = 0;
            for (int j = 0; j < n; ++j) {
                if (mask & (1 << j)) {
                    const bool upper = bound_pick & (1 << bp);
                    ++bp;
                    const double v = upper ? lp.variables()[j].upper : lp.variables()[j].lower;
                    if (!std::isfinite(v)) {
                        bound_ok = false;
                        break;
                    }
                    x(j) = v;
                }
            }
            if (!bound_ok) continue;

            // Choose need_rows rows out of m (lexicographic subsets).
            std::vector<int> comb(need_rows);
            for (int i = 0; i < need_rows; ++i) comb[i] = i;
            bool more = true;
            while (more) {
                if (need_rows == 0) {
                    if (oracle_point_feasible(lp, x, tol)) {
                        double obj = lp.objective_constant();
                        for (int j = 0; j < n; ++j) obj += lp.variables()[j].objective * x(j);
                        if (!best.feasible || obj < best.objective) {
                            best.feasible = true;
                            best.objective = obj;
                        }
                    }
                } else {
                    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(need_rows, need_rows);
                    Eigen::VectorXd b = Eigen::VectorXd::Zero(need_rows);
                    for (int r = 0; r < need_rows; ++r) {
                        const auto& c = lp.constraints()[comb[r]];
                        b(r) = c.rhs;
                        for (const auto& [j, coef] : c.terms) {
                            if (mask & (1 << j))
                                b(r) -= coef * x(j);
                            else {
                                for (int f = 0; f < need_rows; ++f)
                                    if (free_vars[f] == j) a(r, f) += coef;
                            }
                        }
                    }
                    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
                    if (lu.isInvertible()) {
                        const Eigen::VectorXd xf = lu.solve(b);
                        for (int f = 0; f < need_rows; ++f) x(free_vars[f]) = xf(f);
                        if (oracle_point_feasible(lp, x, tol)) {
                            double obj = lp.objective_constant();
                            for (int j = 0; j < n; ++j) obj += lp.variables()[j].objective * x(j);
                            if (!best.feasible || obj < best.objective) {
                                best.feasible = true;
                                best.objective = obj;
                            }
                        }
                    }
                }
                // Next subset.
                more = false;
                for (int i = need_rows - 1; i >= 0; --i) {
                    if (comb[i] < m - (need_rows - i)) {
                        ++comb[i];
                        for (int k = i + 1; k < need_rows; ++k) comb[k] = comb[k - 1] + 1;
                        more = true;
                        break;
                    }
                }
                if (need_rows == 0) more = false;
            }
        }
    }
    return best;
}

// Random LP generator shared by the unit and acceptance suites. Variables get
// finite bounds so the oracle's vertex enumeration is exhaustive. Anchored
// instances are feasible by construction; unanchored ones may be infeasible.
inline LinearProgram random_lp(Rng& rng, int n_vars, int n_cons, bool anchored) {
    LinearProgram lp;
    std::vector<double> x0;
    for (int j = 0; j < n_vars; ++j) {
        const double lo = std::floor(rng.uniform() * 10.0) - 5.0;
        const double width = 1.0 + std::floor(rng.uniform() * 10.0);
        const double cost = std::floor(rng.uniform() * 21.0) - 10.0;
        lp.add_variable("x" + std::to_string(j), lo, lo + width, cost);
        x0.push_back(lo + 0.5 * width);
    }
    for (int i = 0; i < n_cons; ++i) {
        std::vector<std::pair<int, double>> terms;
        double activity = 0.0;
        for (int j = 0; j < n_vars; ++j) {
            if (rng.uniform() < 0.4) continue;
            const double coef = std::floor(rng.uniform() * 9.0) - 4.0;
            if (coef == 0.0) continue;
            terms.push_back({j, coef});
            activity += coef * x0[j];
        }
        if (terms.empty()) terms.push_back({0, 1.0});
        const double pick = rng.uniform();
        Sense sense = pick < 0.45 ? Sense::LessEqual
                                  : (pick < 0.9 ? Sense::GreaterEqual : Sense::Equal);
        double rhs;
        if (anchored) {
            activity = 0.0;
            for (const auto& [j, c] : terms) activity += c * x0[j];
            const double slack = sense == Sense::Equal ? 0.0 : 0.5 + 2.0 * rng.uniform();
            rhs = sense == Sense::LessEqual ? activity + slack
                                            : (sense == Sense::GreaterEqual ? activity - slack
                                                                            : activity);
        } else {
            rhs = std::floor(rng.uniform() * 41.0) - 20.0;
        }
        lp.add_constraint("c" + std::to_string(i), sense, rhs, std::move(terms));
    }
    return lp;
}

}  // namespace pcm::testing

#endif
