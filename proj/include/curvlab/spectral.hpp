#pragma once

#include <vector>

#include "curvlab/graph.hpp"

namespace curvlab {

// Eigendecomposition of -Delta as an m-symmetric operator: lambda_0 = 0 <=
// lambda_1 <= ... with m-orthonormal eigenfunctions.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenfunctions;  // one per eigenvalue

    double lambda1() const;
};

Spectrum spectrum(const Graph& g);

struct CheegerResult {
    double h = 0.0;
    std::vector<int> witness;  // minimizing set, sorted
    double boundary = 0.0;     // |dA| = sum of m(x) q(x,y) over the cut
    double volume = 0.0;       // m(A)
};

// Exact Cheeger constant by subset enumeration (complement symmetry halves
// the work); rejects n > 20 with TooLargeForExact.
CheegerResult cheeger(const Graph& g);

inline constexpr int kCheegerExactLimit = 20;

}  // namespace curvlab
