#include "curvlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

constexpr double kPivotTol = 1e-13;
constexpr double kReducedCostTol = 1e-10;
constexpr long kMaxPivots = 1000000;

struct Tableau {
    // rows[i] has ncols entries followed by the rhs cell.
    std::vector<std::vector<double>> rows;
    std::vector<double> obj;  // reduced costs, same layout minus rhs
    std::vector<int> basis;   // basic variable per row
    int nvars;                // decision variables; artificials follow
    int ncols;                // nvars + #artificials

    double& rhs(int i) { return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(ncols)]; }
    double at(int i, int j) const {
        return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    void pivot(int pr, int pc) {
        auto& prow = rows[static_cast<std::size_t>(pr)];
        double piv = prow[static_cast<std::size_t>(pc)];
        for (double& v : prow) v /= piv;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == pr) continue;
            auto& row = rows[static_cast<std::size_t>(i)];
            double f = row[static_cast<std::size_t>(pc)];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols; ++j)
                row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(pc)] = 0.0;
        }
        double f = obj[static_cast<std::size_t>(pc)];
        if (f != 0.0) {
            for (int j = 0; j < ncols; ++j)
                obj[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
            obj[static_cast<std::size_t>(pc)] = 0.0;
        }
        basis[static_cast<std::size_t>(pr)] = pc;
    }

    // Bland iterations until no column improves. allow_artificials controls
    // whether columns >= nvars may enter.
    void run(bool allow_artificials) {
        for (long iter = 0; iter < kMaxPivots; ++iter) {
            int enter = -1;
            int limit = allow_artificials ? ncols : nvars;
            for (int j = 0; j < limit; ++j) {
                if (obj[static_cast<std::size_t>(j)] > kReducedCostTol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return;

            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            double max_col_entry = 0.0;
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                double a = at(i, enter);
                max_col_entry = std::max(max_col_entry, a);
                if (a > kPivotTol) {
                    double ratio = rhs(i) / a;
                    if (ratio < best_ratio - 1e-15 ||
                        (std::abs(ratio - best_ratio) <= 1e-15 &&
                         (leave < 0 || basis[static_cast<std::size_t>(i)] <
                                           basis[static_cast<std::size_t>(leave)]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                if (max_col_entry > 0.0)
                    throw NumericalFailure("pivot candidates below magnitude threshold");
                throw Unbounded("objective unbounded above");
            }
            pivot(leave, enter);
        }
        throw NumericalFailure("simplex iteration limit reached");
    }
};

}  // namespace

LpSolution lp_maximize(const LinearProgram& lp, bool throw_on_failure) {
    const int nvars = static_cast<int>(lp.objective.size());
    const int m = static_cast<int>(lp.eq_lhs.size());
    if (nvars < 1) throw BadParams("LP needs at least one variable");
    if (static_cast<int>(lp.eq_rhs.size()) != m) throw BadParams("constraint shape mismatch");
    for (const auto& row : lp.eq_lhs)
        if (static_cast<int>(row.size()) != nvars) throw BadParams("constraint shape mismatch");
    for (double c : lp.objective)
        if (!std::isfinite(c)) throw BadParams("non-finite objective coefficient");
    for (const auto& row : lp.eq_lhs)
        for (double a : row)
            if (!std::isfinite(a)) throw BadParams("non-finite constraint coefficient");
    for (double b : lp.eq_rhs)
        if (!std::isfinite(b)) throw BadParams("non-finite right-hand side");

    LpSolution sol;
    if (m == 0) {
        // No constraints: every variable sits at its lower bound unless it
        // pays to grow without limit.
        for (double c : lp.objective) {
            if (c > kReducedCostTol) {
                if (throw_on_failure) throw Unbounded("no constraints and a positive objective");
                sol.status = LpStatus::unbounded;
                return sol;
            }
        }
        sol.primal.assign(static_cast<std::size_t>(nvars), 0.0);
        return sol;
    }

    double b_norm = 0.0;
    for (double b : lp.eq_rhs) b_norm = std::max(b_norm, std::abs(b));
    const double feas_tol = 1e-9 * (1.0 + b_norm);

    Tableau t;
    t.nvars = nvars;
    t.ncols = nvars + m;
    t.rows.assign(static_cast<std::size_t>(m),
                  std::vector<double>(static_cast<std::size_t>(t.ncols) + 1, 0.0));
    t.basis.resize(static_cast<std::size_t>(m));
    std::vector<int> orig_row(static_cast<std::size_t>(m));
    std::vector<double> row_sign(static_cast<std::size_t>(m), 1.0);

    for (int i = 0; i < m; ++i) {
        double s = lp.eq_rhs[static_cast<std::size_t>(i)] < 0.0 ? -1.0 : 1.0;
        row_sign[static_cast<std::size_t>(i)] = s;
        for (int j = 0; j < nvars; ++j)
            t.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                s * lp.eq_lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        t.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(nvars + i)] = 1.0;
        t.rhs(i) = s * lp.eq_rhs[static_cast<std::size_t>(i)];
        t.basis[static_cast<std::size_t>(i)] = nvars + i;
        orig_row[static_cast<std::size_t>(i)] = i;
    }

    // Phase 1: maximize minus the artificial sum. Reduced cost of decision
    // column j prices out to the column sum; artificial columns start at 0.
    t.obj.assign(static_cast<std::size_t>(t.ncols), 0.0);
    for (int j = 0; j < nvars; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += t.at(i, j);
        t.obj[static_cast<std::size_t>(j)] = s;
    }
    t.run(/*allow_artificials=*/true);

    double artificial_mass = 0.0;
    for (int i = 0; i < static_cast<int>(t.rows.size()); ++i)
        if (t.basis[static_cast<std::size_t>(i)] >= nvars) artificial_mass += std::abs(t.rhs(i));
    if (artificial_mass > feas_tol) {
        if (throw_on_failure) throw Infeasible("phase-1 optimum leaves artificial mass");
        sol.status = LpStatus::infeasible;
        return sol;
    }

    // Clear leftover basic artificials: pivot them onto any usable decision
    // column, or drop the row as redundant.
    for (int i = static_cast<int>(t.rows.size()) - 1; i >= 0; --i) {
        if (t.basis[static_cast<std::size_t>(i)] < nvars) continue;
        int col = -1;
        for (int j = 0; j < nvars; ++j) {
            if (std::abs(t.at(i, j)) > kPivotTol) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            t.pivot(i, col);
        } else {
            t.rows.erase(t.rows.begin() + i);
            t.basis.erase(t.basis.begin() + i);
            orig_row.erase(orig_row.begin() + i);
        }
    }

    // Phase 2 objective, priced out against the current basis.
    t.obj.assign(static_cast<std::size_t>(t.ncols), 0.0);
    for (int j = 0; j < nvars; ++j) t.obj[static_cast<std::size_t>(j)] = lp.objective[static_cast<std::size_t>(j)];
    for (int i = 0; i < static_cast<int>(t.rows.size()); ++i) {
        int bj = t.basis[static_cast<std::size_t>(i)];
        double f = t.obj[static_cast<std::size_t>(bj)];
        if (f == 0.0) continue;
        for (int j = 0; j < t.ncols; ++j)
            t.obj[static_cast<std::size_t>(j)] -= f * t.at(i, j);
        t.obj[static_cast<std::size_t>(bj)] = 0.0;
    }
    try {
        t.run(/*allow_artificials=*/false);
    } catch (const Unbounded&) {
        if (throw_on_failure) throw;
        sol.status = LpStatus::unbounded;
        return sol;
    }

    sol.primal.assign(static_cast<std::size_t>(nvars), 0.0);
    for (int i = 0; i < static_cast<int>(t.rows.size()); ++i)
        if (t.basis[static_cast<std::size_t>(i)] < nvars)
            sol.primal[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])] = t.rhs(i);
    sol.value = 0.0;
    for (int j = 0; j < nvars; ++j)
        sol.value += lp.objective[static_cast<std::size_t>(j)] * sol.primal[static_cast<std::size_t>(j)];

    // Multipliers live in the reduced costs of the artificial columns
    // (cost 0 in phase 2): obj[nvars+q] = -y_q for the sign-normalized row.
    // Redundant rows were removed and get multiplier 0.
    sol.dual.assign(static_cast<std::size_t>(m), 0.0);
    for (std::size_t i = 0; i < orig_row.size(); ++i) {
        int q = orig_row[i];
        double y = -t.obj[static_cast<std::size_t>(nvars + q)];
        sol.dual[static_cast<std::size_t>(q)] = row_sign[static_cast<std::size_t>(q)] * y;
    }
    return sol;
}

}  // namespace curvlab
