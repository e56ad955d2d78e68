#pragma once

#include <map>
#include <utility>
#include <vector>

#include "curvlab/graph.hpp"

namespace curvlab {

inline constexpr double kCurvatureCertTol = 1e-8;

// kappa(x, y): maximal transport-plan cost between the neighborhoods of x
// and y, divided by d(x, y) (lazy random-walk normalization).
double kappa(const Graph& g, int x, int y);

// Same quantity from the potential side: minimize (Delta f(x) - Delta f(y))
// / d(x,y) over 1-Lipschitz f with f(y) - f(x) = d(x,y). Serves as the
// independent cross-check of kappa.
double kappa_dual(const Graph& g, int x, int y);

enum class PairScope { edges, all };

struct CurvatureMap {
    // Unordered pairs keyed (min index, max index).
    std::map<std::pair<int, int>, double> kappa;
    double min_kappa = 0.0;
    bool nonneg = true;  // min_kappa >= -kCurvatureCertTol

    double at(int x, int y) const;
};

// kappa over the requested pairs, computed in both orders and checked for
// symmetry. Pairs run in parallel.
CurvatureMap curvature_all(const Graph& g, PairScope scope = PairScope::all);

// Gamma_k(f, g) via the iterated carre du champ recursion,
// 2 Gamma_{k+1}(f,g) = Delta Gamma_k(f,g) - Gamma_k(f, Delta g)
//                      - Gamma_k(Delta f, g), Gamma_0(f,g) = f g.
std::vector<double> gamma_bilinear(const Graph& g, const std::vector<double>& f,
                                   const std::vector<double>& h, int order);
std::vector<double> carre_du_champ(const Graph& g, const std::vector<double>& f, int order);

struct CdVerdict {
    double K = 0.0;
    double dimension = 0.0;  // +infinity allowed
    std::vector<double> min_eigenvalue;  // per vertex, of the quadratic form on B2(x)
    bool holds = false;
};

// CD(K, n): Gamma_2 f >= K Gamma f + (Delta f)^2 / n pointwise. Checked per
// vertex as the minimal eigenvalue of the quadratic form assembled over
// functions supported on the 2-ball.
CdVerdict cd_check(const Graph& g, double K, double dimension);

}  // namespace curvlab
