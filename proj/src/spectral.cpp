#include "curvlab/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "curvlab/errors.hpp"

namespace curvlab {

double Spectrum::lambda1() const {
    if (eigenvalues.size() < 2) throw BadParams("single-vertex spectrum has no lambda_1");
    return eigenvalues[1];
}

Spectrum spectrum(const Graph& g) {
    if (!g.connected()) throw DisconnectedGraph("spectrum requires a connected graph");
    const int n = g.size();

    // Conjugating -Delta by M^{1/2} symmetrizes it; detailed balance makes
    // S(x,y) = -q(x,y) sqrt(m(x)/m(y)) symmetric.
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        s(x, x) = g.degree(x);
        for (int y : g.neighbors(x))
            s(x, y) = -g.rate(x, y) * std::sqrt(g.measure(x) / g.measure(y));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
    if (solver.info() != Eigen::Success) throw EigensolverFailure("dense eigensolve failed");

    Spectrum spec;
    spec.eigenvalues.resize(static_cast<std::size_t>(n));
    spec.eigenfunctions.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        spec.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        std::vector<double> f(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            f[static_cast<std::size_t>(x)] = solver.eigenvectors()(x, i) / std::sqrt(g.measure(x));
        spec.eigenfunctions[static_cast<std::size_t>(i)] = std::move(f);
    }

    // Residual contract: ||Delta f + lambda f||_inf <= 1e-8 ||f||_inf.
    for (int i = 0; i < n; ++i) {
        const auto& f = spec.eigenfunctions[static_cast<std::size_t>(i)];
        std::vector<double> lf = g.laplacian(f);
        double sup_f = 0.0, sup_res = 0.0;
        for (int x = 0; x < n; ++x) {
            sup_f = std::max(sup_f, std::abs(f[static_cast<std::size_t>(x)]));
            sup_res = std::max(sup_res,
                               std::abs(lf[static_cast<std::size_t>(x)] +
                                        spec.eigenvalues[static_cast<std::size_t>(i)] *
                                            f[static_cast<std::size_t>(x)]));
        }
        if (sup_res > 1e-8 * sup_f)
            throw EigensolverFailure("eigenpair residual above contract");
    }
    return spec;
}

CheegerResult cheeger(const Graph& g) {
    const int n = g.size();
    if (n < 2) throw BadParams("cheeger needs at least two vertices");
    if (n > kCheegerExactLimit)
        throw TooLargeForExact("exact cheeger enumeration is limited to n <= " +
                               std::to_string(kCheegerExactLimit));
    if (!g.connected()) throw DisconnectedGraph("cheeger requires a connected graph");

    const double m_total = g.total_measure();
    const std::uint32_t full = (1u << n) - 1u;

    CheegerResult best;
    best.h = std::numeric_limits<double>::infinity();

    auto consider = [&](std::uint32_t subset, double boundary, double volume) {
        if (2.0 * volume > m_total * (1.0 + 1e-12)) return;
        double ratio = boundary / volume;
        if (ratio < best.h - 1e-15) {
            best.h = ratio;
            best.boundary = boundary;
            best.volume = volume;
            best.witness.clear();
            for (int v = 0; v < n; ++v)
                if (subset & (1u << v)) best.witness.push_back(v);
        }
    };

    // Enumerate sets containing vertex 0; each mask stands for the pair
    // {A, complement}, which share the same boundary.
    for (std::uint32_t mask = 1; mask <= full; mask += 2) {
        if (mask == full) continue;
        double volume = 0.0;
        double boundary = 0.0;
        for (int x = 0; x < n; ++x) {
            if (!(mask & (1u << x))) continue;
            volume += g.measure(x);
            for (int y : g.neighbors(x))
                if (!(mask & (1u << y))) boundary += g.measure(x) * g.rate(x, y);
        }
        consider(mask, boundary, volume);
        consider(full & ~mask, boundary, m_total - volume);
    }
    return best;
}

}  // namespace curvlab
