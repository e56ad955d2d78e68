#pragma once

#include <vector>

namespace curvlab {

// Equality-form LP: maximize objective . x subject to eq_lhs x = eq_rhs,
// x >= 0. Callers rewrite inequalities with explicit slack variables.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> eq_lhs;
    std::vector<double> eq_rhs;

    int add_variable(double cost) {
        objective.push_back(cost);
        for (auto& row : eq_lhs) row.push_back(0.0);
        return static_cast<int>(objective.size()) - 1;
    }
    int add_constraint(double rhs) {
        eq_lhs.emplace_back(objective.size(), 0.0);
        eq_rhs.push_back(rhs);
        return static_cast<int>(eq_rhs.size()) - 1;
    }
    void set_coeff(int row, int var, double a) {
        eq_lhs[static_cast<std::size_t>(row)][static_cast<std::size_t>(var)] = a;
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    double value = 0.0;
    std::vector<double> primal;
    // One multiplier per equality constraint; value == dual . eq_rhs at the
    // optimum (strong duality). Zero for redundant rows.
    std::vector<double> dual;
};

// Dense two-phase primal simplex with Bland's anti-cycling rule (lowest
// eligible index enters; ratio ties leave by lowest basic index), so repeated
// runs pick the same optimal basis. Throws Infeasible, Unbounded or
// NumericalFailure instead of returning those states silently when
// `throw_on_failure` is set; otherwise reports them in `status`.
LpSolution lp_maximize(const LinearProgram& lp, bool throw_on_failure = true);

}  // namespace curvlab
