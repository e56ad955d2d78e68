#pragma once

#include <tuple>
#include <utility>
#include <vector>

#include "curvlab/graph.hpp"
#include "curvlab/report.hpp"

namespace curvlab {

// e^{tL} for a finite, possibly directed, possibly sub-Markov generator:
// L(x,y) = q(x,y) off-diagonal, L(x,x) = -(sum of outgoing rates + kill
// rate). Evaluation runs the uniformized Poisson series over the kernel
// P = I + L / lambda_u, which preserves positivity and sup-norm contraction
// and truncates with an explicit tail bound.
class HeatOperator {
public:
    HeatOperator(int n, const std::vector<std::tuple<int, int, double>>& rates,
                 std::vector<double> kill = {}, double tolerance = 1e-10);
    static HeatOperator from_graph(const Graph& g, double tolerance = 1e-10);

    int size() const { return n_; }
    double tolerance() const { return tolerance_; }
    double uniformization_rate() const { return lambda_; }
    double out_degree(int x) const { return deg_[static_cast<std::size_t>(x)]; }
    const std::vector<std::pair<int, double>>& row(int x) const {
        return rows_[static_cast<std::size_t>(x)];
    }

    // Poisson terms needed for tail mass <= tolerance at time t.
    int term_count(double t) const;

    std::vector<double> apply(const std::vector<double>& f, double t) const;
    // Same series with at least `min_terms` terms; used to confirm the
    // truncation error empirically.
    std::vector<double> apply_with_terms(const std::vector<double>& f, double t,
                                         int min_terms) const;

private:
    int n_;
    std::vector<std::vector<std::pair<int, double>>> rows_;
    std::vector<double> deg_;
    double lambda_;
    double tolerance_;
};

// Semigroup of the killed generator q_S(x,y) = q(x,y) 1_S(x) applied to
// f 1_S; sub-Markov, values outside S stay zero.
std::vector<double> dirichlet_heat(const Graph& g, const std::vector<bool>& in_s,
                                   const std::vector<double>& f, double t,
                                   double tolerance = 1e-10);

// Survival profile of the constant-rate birth-death chain on 0,1,2,...
// absorbed at zero: phi_t(r) for r = 0..r_max. The chain is truncated at
// r_max + K + 1 levels where K is the uniformization term count, which keeps
// every reported value exact to the tolerance (k Poisson steps reach at most
// distance k, so the cut never influences the queried levels).
std::vector<double> phi_profile(double q_min, double t, int r_max, double tolerance = 1e-10);
double phi(double q_min, double t, int r, double tolerance = 1e-10);

struct BirthDeathSolution {
    double q_min = 0.0;
    std::vector<double> t_grid;
    int r_max = 0;
    int truncation_level = 0;  // largest chain length used
    std::vector<std::vector<double>> values;  // values[ti][r]

    double value(double t, int r) const;
};

BirthDeathSolution solve_birth_death(double q_min, const std::vector<double>& t_grid, int r_max,
                                     double tolerance = 1e-10);

// Grid checks of the birth-death comparison function: discrete concavity of
// the time derivative, monotonicity in the level, and the r / (2 sqrt(t
// q_min)) bound. Violations become failing entries, not errors.
std::vector<ReportEntry> phi_properties_check(double q_min, const std::vector<double>& t_grid,
                                              int r_max, double slack_tol = 1e-9);

}  // namespace curvlab
