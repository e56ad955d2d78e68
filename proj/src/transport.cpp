#include "curvlab/transport.hpp"

#include <algorithm>
#include <cmath>

#include "curvlab/errors.hpp"
#include "curvlab/lp.hpp"

namespace curvlab {

namespace {

constexpr double kEntryClampTol = 1e-12;
constexpr double kMarginalTol = 1e-9;

}  // namespace

double TransportPlan::total_mass() const {
    double s = 0.0;
    for (const auto& [xy, v] : rho) s += v;
    return s;
}

double MassProfile::total() const {
    double s = 0.0;
    for (const auto& [k, v] : mu) s += v;
    return s;
}

void validate_plan(const Graph& g, const TransportPlan& plan, double tol) {
    const auto& d = g.distances();
    std::vector<double> row_sum(static_cast<std::size_t>(g.size()), 0.0);
    std::vector<double> col_sum(static_cast<std::size_t>(g.size()), 0.0);
    for (const auto& [xy, v] : plan.rho) {
        auto [x, y] = xy;
        if (v < -kEntryClampTol) throw ConstructionViolation("negative plan entry");
        if (d(plan.x0, x) > 1 || d(plan.y0, y) > 1)
            throw ConstructionViolation("plan entry outside the unit balls");
        row_sum[static_cast<std::size_t>(x)] += v;
        col_sum[static_cast<std::size_t>(y)] += v;
    }
    for (int x = 0; x < g.size(); ++x) {
        if (x == plan.x0) continue;
        double want = g.rate(plan.x0, x);
        if (std::abs(row_sum[static_cast<std::size_t>(x)] - want) > tol)
            throw ConstructionViolation("row marginal mismatch at " + g.name(x));
    }
    for (int y = 0; y < g.size(); ++y) {
        if (y == plan.y0) continue;
        double want = g.rate(plan.y0, y);
        if (std::abs(col_sum[static_cast<std::size_t>(y)] - want) > tol)
            throw ConstructionViolation("column marginal mismatch at " + g.name(y));
    }
}

double plan_cost(const Graph& g, const TransportPlan& plan) {
    const auto& d = g.distances();
    double c = 0.0;
    for (const auto& [xy, v] : plan.rho)
        c += v * (d(plan.x0, plan.y0) - d(xy.first, xy.second));
    return c;
}

MassProfile mass_profile(const Graph& g, const TransportPlan& plan) {
    const auto& d = g.distances();
    MassProfile prof;
    for (const auto& [xy, v] : plan.rho)
        prof.mu[d(xy.first, xy.second) - d(plan.x0, plan.y0)] += v;
    return prof;
}

OptimalPlanResult optimal_plan(const Graph& g, int x0, int y0) {
    if (x0 == y0) throw BadParams("optimal_plan needs distinct endpoints");
    const auto& d = g.distances();
    const std::vector<int> dom_x = g.ball(x0, 1);
    const std::vector<int> dom_y = g.ball(y0, 1);
    const int ny = static_cast<int>(dom_y.size());
    auto var = [&](int xi, int yi) { return xi * ny + yi; };

    LinearProgram lp;
    lp.objective.resize(dom_x.size() * dom_y.size());
    for (int xi = 0; xi < static_cast<int>(dom_x.size()); ++xi)
        for (int yi = 0; yi < ny; ++yi)
            lp.objective[static_cast<std::size_t>(var(xi, yi))] =
                d(x0, y0) - d(dom_x[static_cast<std::size_t>(xi)], dom_y[static_cast<std::size_t>(yi)]);

    for (int xi = 0; xi < static_cast<int>(dom_x.size()); ++xi) {
        int x = dom_x[static_cast<std::size_t>(xi)];
        if (x == x0) continue;
        int row = lp.add_constraint(g.rate(x0, x));
        for (int yi = 0; yi < ny; ++yi) lp.set_coeff(row, var(xi, yi), 1.0);
    }
    for (int yi = 0; yi < ny; ++yi) {
        int y = dom_y[static_cast<std::size_t>(yi)];
        if (y == y0) continue;
        int row = lp.add_constraint(g.rate(y0, y));
        for (int xi = 0; xi < static_cast<int>(dom_x.size()); ++xi)
            lp.set_coeff(row, var(xi, yi), 1.0);
    }

    LpSolution sol = lp_maximize(lp);
    OptimalPlanResult out;
    out.plan.x0 = x0;
    out.plan.y0 = y0;
    out.value = sol.value;
    for (int xi = 0; xi < static_cast<int>(dom_x.size()); ++xi)
        for (int yi = 0; yi < ny; ++yi) {
            double v = sol.primal[static_cast<std::size_t>(var(xi, yi))];
            if (v > kEntryClampTol)
                out.plan.rho[{dom_x[static_cast<std::size_t>(xi)],
                              dom_y[static_cast<std::size_t>(yi)]}] = v;
        }
    return out;
}

PerfectPlanResult perfect_plan(const Graph& g, int x0, int y0) {
    if (x0 == y0) throw BadParams("perfect_plan needs distinct endpoints");
    const auto& d = g.distances();
    OptimalPlanResult base = optimal_plan(g, x0, y0);
    const int d0 = d(x0, y0);

    PerfectPlanResult out;
    out.value = base.value;
    PlanCorrection& corr = out.correction;

    // Classify every pair of the product of unit balls. Distance comparisons
    // are exact integer arithmetic.
    for (int x : g.ball(x0, 1)) {
        for (int y : g.ball(y0, 1)) {
            int diff = d(x, y) - d0;
            bool in_h = diff >= 2;
            bool in_l = diff <= -2;
            bool in_x = d(x, y0) < d0 && d(x, y) >= d0;
            bool in_y = d(x0, y) < d0 && d(x, y) >= d0;
            if (in_h) corr.H.emplace_back(x, y);
            if (in_l) corr.L.emplace_back(x, y);
            if (in_x) corr.X.emplace_back(x, y);
            if (in_y) corr.Y.emplace_back(x, y);
            if (in_h && diff != 2) throw ConstructionViolation("H pair beyond distance shift 2");
            if (in_l && diff != -2) throw ConstructionViolation("L pair beyond distance shift -2");
            if ((in_x || in_y) && diff != 0)
                throw ConstructionViolation("X/Y pair with nonzero distance shift");
            if ((in_h || in_l) && (in_x || in_y))
                throw ConstructionViolation("H/L overlaps the distance-preserving sets");
            if ((in_h || in_l || in_x || in_y) && (x == x0 || y == y0))
                throw ConstructionViolation("correction set touches a plan center");
        }
    }

    std::map<std::pair<int, int>, bool> in_a;
    for (const auto& p : corr.H) in_a[p] = true;
    for (const auto& p : corr.L) in_a[p] = true;
    for (const auto& p : corr.X) in_a[p] = true;
    for (const auto& p : corr.Y) in_a[p] = true;

    // pi removes the plan mass on A and rebooks it as lazy mass in the free
    // x0-row and y0-column.
    std::map<std::pair<int, int>, double>& pi = corr.pi;
    for (const auto& [xy, removed] : in_a) {
        (void)removed;
        double v = base.plan.mass(xy.first, xy.second);
        if (v == 0.0) continue;
        pi[{xy.first, xy.second}] -= v;
        pi[{xy.first, y0}] += v;
        pi[{x0, xy.second}] += v;
    }

    double pi_cost = 0.0;
    for (const auto& [xy, v] : pi) pi_cost += v * (d0 - d(xy.first, xy.second));
    if (pi_cost < -kMarginalTol)
        throw ConstructionViolation("correction lowered the plan cost");

    out.plan.x0 = x0;
    out.plan.y0 = y0;
    out.plan.rho = base.plan.rho;
    for (const auto& [xy, v] : pi) {
        double& entry = out.plan.rho[xy];
        entry += v;
        if (entry < -kEntryClampTol)
            throw ConstructionViolation("correction drove an entry negative");
        if (entry <= kEntryClampTol) out.plan.rho.erase(xy);
    }

    validate_plan(g, out.plan);
    double cost = plan_cost(g, out.plan);
    if (std::abs(cost - base.value) > 1e-8)
        throw ConstructionViolation("corrected plan lost optimality");
    MassProfile prof = mass_profile(g, out.plan);
    for (const auto& [k, v] : prof.mu)
        if (std::abs(k) > 1 && v > 1e-10)
            throw ConstructionViolation("mass moved over distance shift " + std::to_string(k));
    if (prof.at(-1) < 2.0 * g.q_min() - kMarginalTol)
        throw ConstructionViolation("contracting mass below 2 q_min");
    return out;
}

double wasserstein1(const Graph& g, const std::vector<double>& mu_density,
                    const std::vector<double>& nu_density) {
    const int n = g.size();
    if (static_cast<int>(mu_density.size()) != n || static_cast<int>(nu_density.size()) != n)
        throw BadParams("density length mismatch");
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    double total_a = 0.0, total_b = 0.0;
    for (int v = 0; v < n; ++v) {
        if (mu_density[static_cast<std::size_t>(v)] < -kEntryClampTol ||
            nu_density[static_cast<std::size_t>(v)] < -kEntryClampTol)
            throw BadParams("densities must be nonnegative");
        a[static_cast<std::size_t>(v)] = mu_density[static_cast<std::size_t>(v)] * g.measure(v);
        b[static_cast<std::size_t>(v)] = nu_density[static_cast<std::size_t>(v)] * g.measure(v);
        total_a += a[static_cast<std::size_t>(v)];
        total_b += b[static_cast<std::size_t>(v)];
    }
    if (std::abs(total_a - total_b) > 1e-9)
        throw MassMismatch("total masses differ by " + std::to_string(total_a - total_b));
    if (total_a <= kEntryClampTol) return 0.0;

    std::vector<int> supp_a, supp_b;
    for (int v = 0; v < n; ++v) {
        if (a[static_cast<std::size_t>(v)] > 0.0) supp_a.push_back(v);
        if (b[static_cast<std::size_t>(v)] > 0.0) supp_b.push_back(v);
    }
    const auto& d = g.distances();
    const int nb = static_cast<int>(supp_b.size());
    auto var = [&](int xi, int yi) { return xi * nb + yi; };

    LinearProgram lp;
    lp.objective.resize(supp_a.size() * supp_b.size());
    for (int xi = 0; xi < static_cast<int>(supp_a.size()); ++xi)
        for (int yi = 0; yi < nb; ++yi)
            lp.objective[static_cast<std::size_t>(var(xi, yi))] =
                -static_cast<double>(d(supp_a[static_cast<std::size_t>(xi)],
                                       supp_b[static_cast<std::size_t>(yi)]));
    for (int xi = 0; xi < static_cast<int>(supp_a.size()); ++xi) {
        int row = lp.add_constraint(a[static_cast<std::size_t>(supp_a[static_cast<std::size_t>(xi)])]);
        for (int yi = 0; yi < nb; ++yi) lp.set_coeff(row, var(xi, yi), 1.0);
    }
    for (int yi = 0; yi < nb; ++yi) {
        int row = lp.add_constraint(b[static_cast<std::size_t>(supp_b[static_cast<std::size_t>(yi)])]);
        for (int xi = 0; xi < static_cast<int>(supp_a.size()); ++xi)
            lp.set_coeff(row, var(xi, yi), 1.0);
    }
    return -lp_maximize(lp).value;
}

}  // namespace curvlab
