#ifndef PCM_LP_HPP
#define PCM_LP_HPP

#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace pcm {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, Equal, GreaterEqual };

struct LpVariable {
    std::string id;
    double lower = 0.0;
    double upper = kInf;
    double objective = 0.0;
};

struct LpConstraint {
    std::string id;  // semantic tag, e.g. balance@3, renew-cap@W1@3, line+@L2@4
    std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

// Canonical LP: min c'x + const  s.t.  Ax {<=,=,>=} b,  l <= x <= u.
// Immutable once built; constraint ids double as the semantic tags used by
// gradient extraction.
class LinearProgram {
public:
    int add_variable(std::string id, double lower, double upper, double objective);
    int add_constraint(std::string id, Sense sense, double rhs,
                       std::vector<std::pair<int, double>> terms);
    void add_objective_constant(double c) { objective_constant_ += c; }

    const std::vector<LpVariable>& variables() const { return vars_; }
    const std::vector<LpConstraint>& constraints() const { return cons_; }
    double objective_constant() const { return objective_constant_; }

    int variable_index(const std::string& id) const;      // -1 if absent
    int constraint_index(const std::string& id) const;    // -1 if absent
    bool has_constraint(const std::string& id) const { return constraint_index(id) >= 0; }

    // Throws ValidationError on inconsistent bounds, bad indices, or
    // duplicate ids.
    void validate() const;

private:
    std::vector<LpVariable> vars_;
    std::vector<LpConstraint> cons_;
    std::unordered_map<std::string, int> var_index_;
    std::unordered_map<std::string, int> con_index_;
    double objective_constant_ = 0.0;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

const char* to_string(SolveStatus s);

struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> primal;         // by variable index
    std::vector<double> duals;          // by constraint index; dF/d(rhs)
    std::vector<double> reduced_costs;  // by variable index
    int iterations = 0;

    double primal_of(const LinearProgram& lp, const std::string& var_id) const;
    double dual_of(const LinearProgram& lp, const std::string& constraint_id) const;
};

// Relative-scaled tolerances used across the solver and its checks.
struct LpTolerances {
    double feasibility = 1e-7;
    double duality_gap = 1e-8;
    double complementary_slackness = 1e-7;
};

// Maps a named parameter to the RHS entries it occurs in.
using ParamMap = std::map<std::string, std::vector<std::pair<std::string, double>>>;

// dF/d(theta) = sum_i dual_i * d(b_i)/d(theta) for each parameter.
// Throws DataError on an unknown constraint id.
std::map<std::string, double> rhs_gradient(const LinearProgram& lp, const LpSolution& sol,
                                           const ParamMap& params);

// Replaces the duals of each group's constraints by their arithmetic mean.
// Groups must be structurally identical up to asset id: same sense, same rhs,
// permutation-equivalent coefficients. Objective and primal are untouched.
LpSolution symmetrize_duals(const LinearProgram& lp, const LpSolution& sol,
                            const std::vector<std::vector<std::string>>& groups);

// Debug dump in the LP text interchange format (objective / subject-to /
// bounds sections) for cross-checking against third-party solvers.
std::string write_lp(const LinearProgram& lp);

}  // namespace pcm

#endif
