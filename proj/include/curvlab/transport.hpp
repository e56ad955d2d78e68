#pragma once

#include <map>
#include <utility>
#include <vector>

#include "curvlab/graph.hpp"

namespace curvlab {

// Nonnegative mass moving the neighborhood rates of x0 onto those of y0:
// row sums match q(x0, .) away from x0, column sums match q(y0, .) away
// from y0, and the x0-row / y0-column carry free (lazy) mass.
struct TransportPlan {
    int x0 = 0;
    int y0 = 0;
    std::map<std::pair<int, int>, double> rho;  // nonzero entries only

    double mass(int x, int y) const {
        auto it = rho.find({x, y});
        return it == rho.end() ? 0.0 : it->second;
    }
    double total_mass() const;
};

// mu(k): mass moved over distance d(x0,y0) + k.
struct MassProfile {
    std::map<int, double> mu;

    double at(int k) const {
        auto it = mu.find(k);
        return it == mu.end() ? 0.0 : it->second;
    }
    double total() const;
};

// The vanishing sets and signed correction used to reshape an optimal plan
// so that mass moves distance at most one.
struct PlanCorrection {
    std::vector<std::pair<int, int>> H;  // pairs two steps farther apart
    std::vector<std::pair<int, int>> L;  // pairs two steps closer
    std::vector<std::pair<int, int>> X;  // distance held although x moved closer to y0
    std::vector<std::pair<int, int>> Y;  // distance held although y moved closer to x0
    std::map<std::pair<int, int>, double> pi;
};

// Marginal and support validation; throws ConstructionViolation when the
// entries do not form a transport plan within `tol`.
void validate_plan(const Graph& g, const TransportPlan& plan, double tol = 1e-9);

double plan_cost(const Graph& g, const TransportPlan& plan);
MassProfile mass_profile(const Graph& g, const TransportPlan& plan);

struct OptimalPlanResult {
    TransportPlan plan;
    double value = 0.0;
};

// Cost-maximizing plan over the marginal polytope; variables span the full
// product of closed unit balls, deterministic basic optimum.
OptimalPlanResult optimal_plan(const Graph& g, int x0, int y0);

struct PerfectPlanResult {
    TransportPlan plan;
    PlanCorrection correction;
    double value = 0.0;  // shared with the uncorrected optimum
};

// Optimal plan with mu(k) = 0 for |k| > 1 and mu(-1) >= 2 q_min, obtained by
// zeroing the correction sets and rebooking their mass as lazy mass. All
// postconditions are asserted; violations throw ConstructionViolation.
PerfectPlanResult perfect_plan(const Graph& g, int x0, int y0);

// Minimal coupling cost between the measures mu(x)m(x) and nu(y)m(y) under
// the hop metric. Throws MassMismatch when total masses differ beyond 1e-9.
double wasserstein1(const Graph& g, const std::vector<double>& mu_density,
                    const std::vector<double>& nu_density);

}  // namespace curvlab
