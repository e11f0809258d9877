#ifndef PCM_SIMPLEX_HPP
#define PCM_SIMPLEX_HPP

#include "pcm/lp.hpp"

namespace pcm {

// Bounded-variable two-phase primal simplex with Bland's anti-cycling rule.
// The pivot policy is fixed, so identical inputs produce identical solutions
// (primal, duals and reduced costs alike). Duals are taken from the final
// basis, y' = c_B' B^{-1}, and are exact sensitivities dF/d(rhs) of the
// equality-form rows.
//
// Instances hold mutable working state; use one per concurrent task.
class SimplexSolver {
public:
    explicit SimplexSolver(LpTolerances tol = {}) : tol_(tol) {}

    // Validates the LP, solves it, and on an optimal result verifies primal
    // feasibility, the duality gap and complementary slackness against the
    // configured tolerances (throwing SolveError on a numerical failure).
    // Infeasible/unbounded models are reported through the status field.
    LpSolution solve(const LinearProgram& lp);

    const LpTolerances& tolerances() const { return tol_; }

private:
    LpTolerances tol_;
};

inline LpSolution solve(const LinearProgram& lp) {
    return SimplexSolver().solve(lp);
}

}  // namespace pcm

#endif
