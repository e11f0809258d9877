#include "pcm/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pcm/errors.hpp"
#include "pcm/text.hpp"

namespace pcm {

int LinearProgram::add_variable(std::string id, double lower, double upper, double objective) {
    const int index = static_cast<int>(vars_.size());
    if (!var_index_.emplace(id, index).second)
        throw ValidationError("duplicate variable id '" + id + "'");
    vars_.push_back({std::move(id), lower, upper, objective});
    return index;
}

int LinearProgram::add_constraint(std::string id, Sense sense, double rhs,
                                  std::vector<std::pair<int, double>> terms) {
    const int index = static_cast<int>(cons_.size());
    if (!con_index_.emplace(id, index).second)
        throw ValidationError("duplicate constraint tag '" + id + "'");
    cons_.push_back({std::move(id), std::move(terms), sense, rhs});
    return index;
}

int LinearProgram::variable_index(const std::string& id) const {
    auto it = var_index_.find(id);
    return it == var_index_.end() ? -1 : it->second;
}

int LinearProgram::constraint_index(const std::string& id) const {
    auto it = con_index_.find(id);
    return it == con_index_.end() ? -1 : it->second;
}

void LinearProgram::validate() const {
    for (const auto& v : vars_) {
        if (std::isnan(v.lower) || std::isnan(v.upper) || std::isnan(v.objective))
            throw ValidationError("variable '" + v.id + "' has NaN data");
        if (v.lower > v.upper)
            throw ValidationError("variable '" + v.id + "': lower bound " + fmt_double(v.lower) +
                                  " exceeds upper bound " + fmt_double(v.upper));
    }
    for (const auto& c : cons_) {
        if (std::isnan(c.rhs)) throw ValidationError("constraint '" + c.id + "' has NaN rhs");
        for (const auto& [j, coef] : c.terms) {
            if (j < 0 || j >= static_cast<int>(vars_.size()))
                throw ValidationError("constraint '" + c.id + "' references undeclared variable");
            if (std::isnan(coef))
                throw ValidationError("constraint '" + c.id + "' has NaN coefficient");
        }
    }
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

double LpSolution::primal_of(const LinearProgram& lp, const std::string& var_id) const {
    const int j = lp.variable_index(var_id);
    if (j < 0) throw DataError("unknown variable id '" + var_id + "'");
    return primal[j];
}

double LpSolution::dual_of(const LinearProgram& lp, const std::string& constraint_id) const {
    const int i = lp.constraint_index(constraint_id);
    if (i < 0) throw DataError("unknown constraint id '" + constraint_id + "'");
    return duals[i];
}

std::map<std::string, double> rhs_gradient(const LinearProgram& lp, const LpSolution& sol,
                                           const ParamMap& params) {
    if (sol.status != SolveStatus::Optimal)
        throw SolveError("rhs_gradient requires an optimal solution");
    std::map<std::string, double> out;
    for (const auto& [param, entries] : params) {
        double g = 0.0;
        for (const auto& [con_id, coef] : entries) {
            const int i = lp.constraint_index(con_id);
            if (i < 0) throw DataError("rhs_gradient: unknown constraint id '" + con_id + "'");
            g += sol.duals[i] * coef;
        }
        out[param] = g;
    }
    return out;
}

namespace {

// Structural identity up to asset renaming: same sense, same rhs, and the
// sorted coefficient multiset matches.
void check_group_structure(const LinearProgram& lp, const std::vector<std::string>& group) {
    if (group.size() < 2) return;
    const double tol = 1e-9;
    const auto& first = lp.constraints()[lp.constraint_index(group[0])];
    std::vector<double> ref;
    for (const auto& [j, c] : first.terms) ref.push_back(c);
    std::sort(ref.begin(), ref.end());
    for (size_t k = 1; k < group.size(); ++k) {
        const auto& c = lp.constraints()[lp.constraint_index(group[k])];
        if (c.sense != first.sense || std::abs(c.rhs - first.rhs) > tol * (1 + std::abs(first.rhs)))
            throw ValidationError("symmetrize_duals: constraint '" + c.id +
                                  "' is not structurally identical to '" + first.id + "'");
        std::vector<double> coefs;
        for (const auto& [j, v] : c.terms) coefs.push_back(v);
        std::sort(coefs.begin(), coefs.end());
        if (coefs.size() != ref.size())
            throw ValidationError("symmetrize_duals: constraint '" + c.id +
                                  "' is not structurally identical to '" + first.id + "'");
        for (size_t i = 0; i < coefs.size(); ++i)
            if (std::abs(coefs[i] - ref[i]) > tol * (1 + std::abs(ref[i])))
                throw ValidationError("symmetrize_duals: constraint '" + c.id +
                                      "' is not structurally identical to '" + first.id + "'");
    }
}

}  // namespace

LpSolution symmetrize_duals(const LinearProgram& lp, const LpSolution& sol,
                            const std::vector<std::vector<std::string>>& groups) {
    LpSolution out = sol;
    for (const auto& group : groups) {
        if (group.empty()) continue;
        for (const auto& id : group)
            if (lp.constraint_index(id) < 0)
                throw DataError("symmetrize_duals: unknown constraint id '" + id + "'");
        check_group_structure(lp, group);
        double sum = 0.0;
        for (const auto& id : group) sum += sol.duals[lp.constraint_index(id)];
        const double mean = sum / static_cast<double>(group.size());
        for (const auto& id : group) out.duals[lp.constraint_index(id)] = mean;
    }
    return out;
}

std::string write_lp(const LinearProgram& lp) {
    std::ostringstream out;
    out << "Minimize\n obj:";
    bool first = true;
    for (const auto& v : lp.variables()) {
        if (v.objective == 0.0) continue;
        out << (v.objective < 0 || first ? " " : " + ");
        if (v.objective < 0) out << "- ";
        out << fmt_double(std::abs(v.objective)) << " " << v.id;
        first = false;
    }
    if (first) out << " 0 " << (lp.variables().empty() ? "x0" : lp.variables()[0].id);
    out << "\nSubject To\n";
    for (const auto& c : lp.constraints()) {
        out << " " << c.id << ":";
        for (const auto& [j, coef] : c.terms) {
            out << (coef < 0 ? " - " : " + ") << fmt_double(std::abs(coef)) << " "
                << lp.variables()[j].id;
        }
        switch (c.sense) {
            case Sense::LessEqual: out << " <= "; break;
            case Sense::Equal: out << " = "; break;
            case Sense::GreaterEqual: out << " >= "; break;
        }
        out << fmt_double(c.rhs) << "\n";
    }
    out << "Bounds\n";
    for (const auto& v : lp.variables()) {
        if (v.upper == kInf)
            out << " " << fmt_double(v.lower) << " <= " << v.id << "\n";
        else
            out << " " << fmt_double(v.lower) << " <= " << v.id << " <= " << fmt_double(v.upper)
                << "\n";
    }
    out << "End\n";
    return out.str();
}

}  // namespace pcm
