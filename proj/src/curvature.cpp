#include "curvlab/curvature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "curvlab/errors.hpp"
#include "curvlab/lp.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/transport.hpp"

namespace curvlab {

double kappa(const Graph& g, int x, int y) {
    if (x == y) throw BadParams("kappa needs distinct vertices");
    return optimal_plan(g, x, y).value / g.distances()(x, y);
}

double kappa_dual(const Graph& g, int x, int y) {
    if (x == y) throw BadParams("kappa_dual needs distinct vertices");
    const auto& d = g.distances();
    const double dxy = d(x, y);

    // Potential domain: both unit balls. Lipschitz constraints use global
    // distances, so restricting to this set is exact.
    std::set<int> dom_set;
    for (int v : g.ball(x, 1)) dom_set.insert(v);
    for (int v : g.ball(y, 1)) dom_set.insert(v);
    std::vector<int> dom(dom_set.begin(), dom_set.end());
    const int nd = static_cast<int>(dom.size());
    std::vector<int> pos(static_cast<std::size_t>(g.size()), -1);
    for (int i = 0; i < nd; ++i) pos[static_cast<std::size_t>(dom[static_cast<std::size_t>(i)])] = i;

    // Shift to nonnegative variables: the solver sees p(u) = f(u) + diam
    // with f(x) pinned to 0; the Laplacian ignores the shift.
    const double shift = static_cast<double>(g.diameter());

    LinearProgram lp;
    for (int i = 0; i < nd; ++i) lp.add_variable(0.0);

    // Objective: maximize (Delta f(y) - Delta f(x)) / d so the reported value
    // is the minimized signed gradient of Delta f.
    for (int v : g.neighbors(y)) {
        int i = pos[static_cast<std::size_t>(v)];
        lp.objective[static_cast<std::size_t>(i)] += g.rate(y, v) / dxy;
    }
    lp.objective[static_cast<std::size_t>(pos[static_cast<std::size_t>(y)])] -= g.degree(y) / dxy;
    for (int v : g.neighbors(x)) {
        int i = pos[static_cast<std::size_t>(v)];
        lp.objective[static_cast<std::size_t>(i)] -= g.rate(x, v) / dxy;
    }
    lp.objective[static_cast<std::size_t>(pos[static_cast<std::size_t>(x)])] += g.degree(x) / dxy;

    {
        int row = lp.add_constraint(shift);  // pin f(x) = 0
        lp.set_coeff(row, pos[static_cast<std::size_t>(x)], 1.0);
    }
    {
        int row = lp.add_constraint(dxy);  // unit signed gradient from x to y
        lp.set_coeff(row, pos[static_cast<std::size_t>(y)], 1.0);
        lp.set_coeff(row, pos[static_cast<std::size_t>(x)], -1.0);
    }
    for (int i = 0; i < nd; ++i) {
        for (int j = i + 1; j < nd; ++j) {
            double dij = d(dom[static_cast<std::size_t>(i)], dom[static_cast<std::size_t>(j)]);
            int s1 = lp.add_variable(0.0);
            int row1 = lp.add_constraint(dij);
            lp.set_coeff(row1, i, 1.0);
            lp.set_coeff(row1, j, -1.0);
            lp.set_coeff(row1, s1, 1.0);
            int s2 = lp.add_variable(0.0);
            int row2 = lp.add_constraint(dij);
            lp.set_coeff(row2, j, 1.0);
            lp.set_coeff(row2, i, -1.0);
            lp.set_coeff(row2, s2, 1.0);
        }
    }

    return -lp_maximize(lp).value;
}

double CurvatureMap::at(int x, int y) const {
    auto it = kappa.find({std::min(x, y), std::max(x, y)});
    if (it == kappa.end()) throw BadParams("pair not covered by this curvature map");
    return it->second;
}

CurvatureMap curvature_all(const Graph& g, PairScope scope) {
    const auto& d = g.distances();
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < g.size(); ++x)
        for (int y = x + 1; y < g.size(); ++y)
            if (scope == PairScope::all || d(x, y) == 1) pairs.emplace_back(x, y);

    std::vector<double> values(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        auto [x, y] = pairs[i];
        double forward = kappa(g, x, y);
        double backward = kappa(g, y, x);
        if (std::abs(forward - backward) > 1e-9)
            throw ConstructionViolation("kappa asymmetry at (" + g.name(x) + "," + g.name(y) +
                                        ")");
        values[i] = forward;
    });

    CurvatureMap map;
    map.min_kappa = pairs.empty() ? 0.0 : values[0];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        map.kappa[pairs[i]] = values[i];
        map.min_kappa = std::min(map.min_kappa, values[i]);
    }
    map.nonneg = map.min_kappa >= -kCurvatureCertTol;
    return map;
}

std::vector<double> gamma_bilinear(const Graph& g, const std::vector<double>& f,
                                   const std::vector<double>& h, int order) {
    if (order < 0) throw BadParams("gamma order must be nonnegative");
    const std::size_t n = static_cast<std::size_t>(g.size());
    if (f.size() != n || h.size() != n) throw BadParams("function length mismatch");
    if (order == 0) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = f[i] * h[i];
        return out;
    }
    std::vector<double> inner = gamma_bilinear(g, f, h, order - 1);
    std::vector<double> lf = g.laplacian(f);
    std::vector<double> lh = g.laplacian(h);
    std::vector<double> t1 = g.laplacian(inner);
    std::vector<double> t2 = gamma_bilinear(g, f, lh, order - 1);
    std::vector<double> t3 = gamma_bilinear(g, lf, h, order - 1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (t1[i] - t2[i] - t3[i]);
    return out;
}

std::vector<double> carre_du_champ(const Graph& g, const std::vector<double>& f, int order) {
    if (order != 1 && order != 2) throw BadParams("carre du champ order must be 1 or 2");
    return gamma_bilinear(g, f, f, order);
}

CdVerdict cd_check(const Graph& g, double K, double dimension) {
    if (!(dimension > 0.0)) throw BadParams("dimension must be positive (or infinite)");
    CdVerdict verdict;
    verdict.K = K;
    verdict.dimension = dimension;
    verdict.min_eigenvalue.assign(static_cast<std::size_t>(g.size()), 0.0);
    const bool finite_dim = std::isfinite(dimension);

    parallel_for(static_cast<std::size_t>(g.size()), [&](std::size_t xi) {
        int x = static_cast<int>(xi);
        std::vector<int> dom = g.ball(x, 2);
        const int nd = static_cast<int>(dom.size());

        // The form only sees f through its values on B2(x); assemble it on
        // coordinate basis functions by bilinearity.
        std::vector<std::vector<double>> basis(static_cast<std::size_t>(nd));
        for (int i = 0; i < nd; ++i) {
            basis[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(g.size()), 0.0);
            basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(dom[static_cast<std::size_t>(i)])] = 1.0;
        }
        std::vector<std::vector<double>> lap(static_cast<std::size_t>(nd));
        for (int i = 0; i < nd; ++i) lap[static_cast<std::size_t>(i)] = g.laplacian(basis[static_cast<std::size_t>(i)]);

        Eigen::MatrixXd form(nd, nd);
        for (int i = 0; i < nd; ++i) {
            for (int j = i; j < nd; ++j) {
                std::vector<double> g2 =
                    gamma_bilinear(g, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)], 2);
                std::vector<double> g1 =
                    gamma_bilinear(g, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)], 1);
                double v = g2[static_cast<std::size_t>(x)] - K * g1[static_cast<std::size_t>(x)];
                if (finite_dim)
                    v -= lap[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] *
                         lap[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)] / dimension;
                form(i, j) = v;
                form(j, i) = v;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw EigensolverFailure("CD form eigensolve failed at " + g.name(x));
        verdict.min_eigenvalue[xi] = solver.eigenvalues()(0);
    });

    verdict.holds = true;
    for (double v : verdict.min_eigenvalue)
        if (v < -1e-8) verdict.holds = false;
    return verdict;
}

}  // namespace curvlab
