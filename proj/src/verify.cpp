#include "curvlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/coupling.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/graph_io.hpp"
#include "curvlab/heat.hpp"
#include "curvlab/rng.hpp"
#include "curvlab/spectral.hpp"
#include "curvlab/transport.hpp"

namespace curvlab {

namespace {

constexpr std::uint64_t kStreamFunctions = 101;
constexpr std::uint64_t kStreamSigns = 102;
constexpr std::uint64_t kStreamDensities = 103;
constexpr std::uint64_t kStreamSubsets = 104;

double lipschitz_norm(const Graph& g, const std::vector<double>& f) {
    const auto& d = g.distances();
    double best = 0.0;
    for (int x = 0; x < g.size(); ++x)
        for (int y = x + 1; y < g.size(); ++y)
            best = std::max(best, std::abs(f[static_cast<std::size_t>(x)] -
                                           f[static_cast<std::size_t>(y)]) /
                                      d(x, y));
    return best;
}

double l1_norm(const Graph& g, const std::vector<double>& f) {
    double s = 0.0;
    for (int x = 0; x < g.size(); ++x)
        s += g.measure(x) * std::abs(f[static_cast<std::size_t>(x)]);
    return s;
}

double sup_norm(const std::vector<double>& f) {
    double s = 0.0;
    for (double v : f) s = std::max(s, std::abs(v));
    return s;
}

void normalize_sup(std::vector<double>& f) {
    double s = sup_norm(f);
    if (s > 0.0)
        for (double& v : f) v /= s;
}

std::vector<std::vector<double>> random_functions(const Graph& g, const VerifyConfig& cfg) {
    std::vector<std::vector<double>> family;
    CounterRng uni(cfg.seed, kStreamFunctions);
    for (int i = 0; i < cfg.n_random_functions; ++i) {
        std::vector<double> f(static_cast<std::size_t>(g.size()));
        for (double& v : f) v = uni.next_double(-1.0, 1.0);
        normalize_sup(f);
        family.push_back(std::move(f));
    }
    CounterRng sgn(cfg.seed, kStreamSigns);
    for (int i = 0; i < cfg.n_sign_vectors; ++i) {
        std::vector<double> f(static_cast<std::size_t>(g.size()));
        for (double& v : f) v = sgn.next_double() < 0.5 ? -1.0 : 1.0;
        family.push_back(std::move(f));
    }
    return family;
}

std::vector<std::vector<int>> random_subsets(const Graph& g, const VerifyConfig& cfg) {
    std::vector<std::vector<int>> out;
    CounterRng rng(cfg.seed, kStreamSubsets);
    while (static_cast<int>(out.size()) < cfg.n_subsets) {
        std::vector<int> subset;
        for (int v = 0; v < g.size(); ++v)
            if (rng.next_double() < 0.5) subset.push_back(v);
        if (subset.empty() || static_cast<int>(subset.size()) == g.size()) continue;
        out.push_back(std::move(subset));
    }
    return out;
}

std::string t_note(double t) {
    std::ostringstream os;
    os << "t=" << t;
    return os.str();
}

struct Worst {
    double slack = 1e300;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string where;

    void offer(double lhs_value, double rhs_value, const std::string& label) {
        if (rhs_value - lhs_value < slack) {
            slack = rhs_value - lhs_value;
            lhs = lhs_value;
            rhs = rhs_value;
            where = label;
        }
    }
};

}  // namespace

VerificationReport verify_inequalities(const Graph& g, const VerifyConfig& cfg) {
    VerificationReport report;
    report.provenance["graph"] = graph_to_json(g);
    report.provenance["config"] = {{"t_grid", cfg.t_grid},
                                   {"seed", cfg.seed},
                                   {"n_random_functions", cfg.n_random_functions},
                                   {"n_sign_vectors", cfg.n_sign_vectors},
                                   {"n_density_pairs", cfg.n_density_pairs},
                                   {"n_subsets", cfg.n_subsets},
                                   {"slack_tol", cfg.slack_tol},
                                   {"heat_tol", cfg.heat_tol},
                                   {"liouville_threshold", cfg.liouville_threshold},
                                   {"force", cfg.force},
                                   {"tv_equiv_delta_only", cfg.tv_equiv_delta_only}};

    auto enabled = [&](const std::string& id) {
        return cfg.checks.empty() || cfg.checks.count(id) > 0;
    };

    CurvatureMap cert = curvature_all(g, PairScope::all);
    report.provenance["min_kappa"] = cert.min_kappa;
    report.add(make_entry("curvature_certified", "min over pairs of kappa(x,y) >= 0",
                          -cert.min_kappa, 0.0, kCurvatureCertTol));
    if (!cert.nonneg) {
        if (!cfg.force) {
            if (cfg.throw_on_uncertified)
                throw CurvatureNotCertified("min kappa = " + std::to_string(cert.min_kappa));
            return report;
        }
    }
    const bool informational = !cert.nonneg;
    const std::string info_note = informational ? " precondition-not-met" : "";
    auto push = [&](ReportEntry e) {
        e.informational = informational;
        if (informational) e.note += info_note;
        report.add(std::move(e));
    };

    const double q_min = g.q_min();
    HeatOperator heat = HeatOperator::from_graph(g, cfg.heat_tol);
    Spectrum spec = g.size() >= 2 ? spectrum(g) : Spectrum{};

    // 1. Gradient decay of the semigroup on a seeded family plus extremal
    // vectors and eigenfunctions, all normalized to sup norm one.
    if (enabled("reverse_poincare")) {
        std::vector<std::vector<double>> family = random_functions(g, cfg);
        for (auto f : spec.eigenfunctions) {
            normalize_sup(f);
            family.push_back(std::move(f));
        }
        for (const auto& subset : random_subsets(g, cfg)) {
            std::vector<double> f(static_cast<std::size_t>(g.size()), 0.0);
            for (int v : subset) f[static_cast<std::size_t>(v)] = 1.0;
            family.push_back(std::move(f));
        }
        for (double t : cfg.t_grid) {
            Worst worst;
            double rhs = 1.0 / std::sqrt(t * q_min);
            for (std::size_t i = 0; i < family.size(); ++i) {
                std::vector<double> pt = heat.apply(family[i], t);
                worst.offer(lipschitz_norm(g, pt), rhs, "f#" + std::to_string(i));
            }
            push(make_entry("reverse_poincare",
                            "lip(P_t f) <= sup|f| / sqrt(t q_min)", worst.lhs, worst.rhs,
                            cfg.slack_tol, t_note(t) + " worst " + worst.where));
        }
    }

    // 2. Total-variation contraction of density pairs against W1.
    if (enabled("tv_estimate")) {
        CounterRng rng(cfg.seed, kStreamDensities);
        std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
        for (int i = 0; i < cfg.n_density_pairs; ++i) {
            std::vector<double> mu(static_cast<std::size_t>(g.size()));
            std::vector<double> nu(static_cast<std::size_t>(g.size()));
            for (double& v : mu) v = rng.next_double();
            for (double& v : nu) v = rng.next_double();
            double sm = 0.0, sn = 0.0;
            for (int x = 0; x < g.size(); ++x) {
                sm += mu[static_cast<std::size_t>(x)] * g.measure(x);
                sn += nu[static_cast<std::size_t>(x)] * g.measure(x);
            }
            for (double& v : mu) v /= sm;
            for (double& v : nu) v /= sn;
            pairs.emplace_back(std::move(mu), std::move(nu));
        }
        std::vector<double> w1(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i)
            w1[i] = wasserstein1(g, pairs[i].first, pairs[i].second);
        for (double t : cfg.t_grid) {
            Worst worst;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                std::vector<double> pm = heat.apply(pairs[i].first, t);
                std::vector<double> pn = heat.apply(pairs[i].second, t);
                std::vector<double> diff(pm.size());
                for (std::size_t x = 0; x < pm.size(); ++x) diff[x] = pm[x] - pn[x];
                worst.offer(l1_norm(g, diff), w1[i] / std::sqrt(t * q_min),
                            "pair#" + std::to_string(i));
            }
            push(make_entry("tv_estimate", "||P_t mu - P_t nu||_1 <= W1(mu,nu) / sqrt(t q_min)",
                            worst.lhs, worst.rhs, cfg.slack_tol,
                            t_note(t) + " worst " + worst.where));
        }
    }

    // 3. The equivalence specialized to point masses: W1 of normalized
    // indicators is the distance, and the contraction holds for them.
    if (enabled("tv_gradient_equivalence")) {
        double worst_w1_err = 0.0;
        std::string where_w1 = "-";
        const auto& d = g.distances();
        std::vector<std::vector<double>> deltas(static_cast<std::size_t>(g.size()));
        for (int z = 0; z < g.size(); ++z) {
            deltas[static_cast<std::size_t>(z)].assign(static_cast<std::size_t>(g.size()), 0.0);
            deltas[static_cast<std::size_t>(z)][static_cast<std::size_t>(z)] = 1.0 / g.measure(z);
        }
        for (int x = 0; x < g.size(); ++x)
            for (int y = x + 1; y < g.size(); ++y) {
                double w = wasserstein1(g, deltas[static_cast<std::size_t>(x)],
                                        deltas[static_cast<std::size_t>(y)]);
                double err = std::abs(w - d(x, y));
                if (err > worst_w1_err) {
                    worst_w1_err = err;
                    where_w1 = "(" + g.name(x) + "," + g.name(y) + ")";
                }
            }
        push(make_entry("w1_delta_distance", "W1(delta_x, delta_y) = d(x,y)", worst_w1_err, 0.0,
                        1e-7, "worst " + where_w1));

        for (double t : cfg.t_grid) {
            Worst worst;
            std::vector<std::vector<double>> pt(static_cast<std::size_t>(g.size()));
            for (int z = 0; z < g.size(); ++z)
                pt[static_cast<std::size_t>(z)] = heat.apply(deltas[static_cast<std::size_t>(z)], t);
            for (int x = 0; x < g.size(); ++x)
                for (int y = x + 1; y < g.size(); ++y) {
                    std::vector<double> diff(static_cast<std::size_t>(g.size()));
                    for (std::size_t i = 0; i < diff.size(); ++i)
                        diff[i] = pt[static_cast<std::size_t>(x)][i] - pt[static_cast<std::size_t>(y)][i];
                    worst.offer(l1_norm(g, diff), d(x, y) / std::sqrt(t * q_min),
                                "(" + g.name(x) + "," + g.name(y) + ")");
                }
            push(make_entry("tv_delta_bound",
                            "||P_t delta_x - P_t delta_y||_1 <= d(x,y) / sqrt(t q_min)",
                            worst.lhs, worst.rhs, cfg.slack_tol,
                            t_note(t) + " worst " + worst.where));
        }
    }

    // 4. Indicator smoothing against the boundary measure.
    if (enabled("buser_lemma")) {
        std::vector<std::vector<int>> subsets = random_subsets(g, cfg);
        for (double t : cfg.t_grid) {
            Worst worst;
            for (std::size_t i = 0; i < subsets.size(); ++i) {
                std::vector<double> ind(static_cast<std::size_t>(g.size()), 0.0);
                for (int v : subsets[i]) ind[static_cast<std::size_t>(v)] = 1.0;
                double boundary = 0.0;
                for (int x : subsets[i])
                    for (int y : g.neighbors(x))
                        if (ind[static_cast<std::size_t>(y)] == 0.0)
                            boundary += g.measure(x) * g.rate(x, y);
                std::vector<double> pt = heat.apply(ind, t);
                std::vector<double> diff(pt.size());
                for (std::size_t x = 0; x < pt.size(); ++x) diff[x] = pt[x] - ind[x];
                worst.offer(l1_norm(g, diff), 2.0 * boundary * std::sqrt(t / q_min),
                            "A#" + std::to_string(i));
            }
            push(make_entry("buser_lemma", "||P_t 1_A - 1_A||_1 <= 2 |dA| sqrt(t / q_min)",
                            worst.lhs, worst.rhs, cfg.slack_tol,
                            t_note(t) + " worst " + worst.where));
        }
    }

    // 5. Spectral gap against the Cheeger constant (exact enumeration scale).
    if (enabled("buser") && g.size() >= 2 && g.size() <= kCheegerExactLimit) {
        CheegerResult ch = cheeger(g);
        double rhs = 16.0 * std::log(2.0) / q_min * ch.h * ch.h;
        push(make_entry("buser", "lambda_1 <= (16 log 2 / q_min) h^2", spec.lambda1(), rhs,
                        cfg.slack_tol, "h=" + std::to_string(ch.h)));
    }

    // 6. Gradient bound for eigenfunctions.
    if (enabled("harnack") && g.size() >= 2) {
        Worst worst;
        for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i) {
            std::vector<double> f = spec.eigenfunctions[i];
            normalize_sup(f);
            double lhs = lipschitz_norm(g, f);
            worst.offer(lhs * lhs, 2.0 * std::exp(1.0) * spec.eigenvalues[i] / q_min,
                        "lambda#" + std::to_string(i));
        }
        push(make_entry("harnack", "lip(f)^2 <= (2 e lambda / q_min) sup|f|^2", worst.lhs,
                        worst.rhs, cfg.slack_tol, "worst " + worst.where));
    }

    // 7. Diameter lower bound on the spectral gap (reversed comparison:
    // the bound goes on the left).
    if (enabled("eigenvalue_diameter") && g.size() >= 2) {
        double bound = std::log(2.0) * q_min /
                       (static_cast<double>(g.diameter()) * static_cast<double>(g.diameter()));
        push(make_entry("eigenvalue_diameter", "lambda_1 >= log 2 q_min / diam^2", bound,
                        spec.lambda1(), cfg.slack_tol));
    }

    // 8. Coupled-walk decay: the birth-death comparison on the grid plus the
    // long-time separation probability.
    if (enabled("coupling_decay")) {
        CouplingGraph coupling = build_perfect_coupling(g);
        CouplingHeatOptions opts;
        opts.slack_tol = cfg.slack_tol;
        opts.heat_tol = cfg.heat_tol;
        opts.force = cfg.force;
        for (auto& e : coupling_heat_bound(coupling, cfg.t_grid, opts)) {
            e.informational = e.informational || informational;
            report.add(std::move(e));
        }
        double t_star = 10.0 * g.diameter() * g.diameter() / q_min;
        HeatOperator pair_heat = coupling.heat_operator(cfg.heat_tol);
        std::vector<double> decay = pair_heat.apply(coupling.off_diagonal_indicator(), t_star);
        push(make_entry("liouville_decay", "max P~_t 1_W at t = 10 diam^2 / q_min below threshold",
                        sup_norm(decay), cfg.liouville_threshold, 0.0, t_note(t_star)));
    }

    return report;
}

}  // namespace curvlab
