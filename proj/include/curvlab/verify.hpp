#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "curvlab/graph.hpp"
#include "curvlab/report.hpp"

namespace curvlab {

struct VerifyConfig {
    std::vector<double> t_grid{0.25, 1.0, 4.0, 16.0};
    std::uint64_t seed = 1;
    int n_random_functions = 32;
    int n_sign_vectors = 8;
    int n_density_pairs = 32;
    int n_subsets = 16;
    double slack_tol = 1e-8;
    double heat_tol = 1e-10;
    // Decay threshold for the long-time coupling check at t = 10 diam^2 / q_min.
    double liouville_threshold = 1e-2;
    // Run checks on an uncertified graph, marking the entries informational.
    bool force = false;
    // Throw CurvatureNotCertified instead of returning a certification-only
    // report when the curvature precondition fails (and force is off).
    bool throw_on_uncertified = true;
    // Check the total-variation/gradient equivalence on point masses only
    // (the general direction is already covered by tv_estimate).
    bool tv_equiv_delta_only = true;
    // Empty set means every check; otherwise a subset of
    // {reverse_poincare, tv_estimate, tv_gradient_equivalence, buser_lemma,
    //  buser, harnack, eigenvalue_diameter, coupling_decay}.
    std::set<std::string> checks;
};

// Runs the configured inequality checks and collects one worst-case entry
// per check and grid time. Identical graph + config produce byte-identical
// serialized reports.
VerificationReport verify_inequalities(const Graph& g, const VerifyConfig& cfg = {});

}  // namespace curvlab
