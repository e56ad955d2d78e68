#include "curvlab/coupling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "curvlab/curvature.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

CouplingGraph::CouplingGraph(Graph base) : base_(std::move(base)) {
    rows_.assign(static_cast<std::size_t>(states()), {});
}

double CouplingGraph::rate(int s_from, int s_to) const {
    for (const auto& [to, q] : rows_[static_cast<std::size_t>(s_from)])
        if (to == s_to) return q;
    return 0.0;
}

TransportPlan CouplingGraph::plan(int x0, int y0) const {
    TransportPlan p;
    p.x0 = x0;
    p.y0 = y0;
    for (const auto& [to, q] : rows_[static_cast<std::size_t>(state(x0, y0))]) {
        auto [x, y] = endpoints(to);
        p.rho[{x, y}] = q;
    }
    return p;
}

HeatOperator CouplingGraph::heat_operator(double tolerance) const {
    std::vector<std::tuple<int, int, double>> rates;
    for (int s = 0; s < states(); ++s)
        for (const auto& [to, q] : rows_[static_cast<std::size_t>(s)]) rates.emplace_back(s, to, q);
    return HeatOperator(states(), rates, {}, tolerance);
}

std::vector<double> CouplingGraph::off_diagonal_indicator() const {
    std::vector<double> w(static_cast<std::size_t>(states()), 1.0);
    for (int x = 0; x < base_.size(); ++x) w[static_cast<std::size_t>(state(x, x))] = 0.0;
    return w;
}

CouplingGraph build_perfect_coupling(const Graph& g) {
    if (!g.connected()) throw DisconnectedGraph("coupling needs a connected base graph");
    CouplingGraph coupling(g);
    const int n = g.size();

    struct PairRates {
        std::vector<std::pair<int, double>> row;
    };
    std::vector<PairRates> per_state(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));

    std::vector<std::pair<int, int>> sources;
    sources.reserve(per_state.size());
    for (int x0 = 0; x0 < n; ++x0)
        for (int y0 = 0; y0 < n; ++y0) sources.emplace_back(x0, y0);

    parallel_for(sources.size(), [&](std::size_t i) {
        auto [x0, y0] = sources[i];
        auto& row = per_state[static_cast<std::size_t>(coupling.state(x0, y0))].row;
        if (x0 == y0) {
            for (int v : g.neighbors(x0))
                row.emplace_back(coupling.state(v, v), g.rate(x0, v));
        } else {
            PerfectPlanResult perfect = perfect_plan(g, x0, y0);
            for (const auto& [xy, q] : perfect.plan.rho) {
                if (xy.first == x0 && xy.second == y0) continue;  // lazy self-rate
                row.emplace_back(coupling.state(xy.first, xy.second), q);
            }
        }
        std::sort(row.begin(), row.end());
    });

    for (std::size_t s = 0; s < per_state.size(); ++s)
        coupling.rows_[s] = std::move(per_state[s].row);

    // Diagonal states must move both walkers together at the base rates.
    for (int x = 0; x < n; ++x) {
        double total = 0.0;
        for (const auto& [to, q] : coupling.row(coupling.state(x, x))) {
            auto [v, w] = coupling.endpoints(to);
            if (v != w) throw ConstructionViolation("diagonal state leaks off the diagonal");
            if (std::abs(q - g.rate(x, v)) > 1e-12)
                throw ConstructionViolation("diagonal rate differs from the base rate");
            total += q;
        }
        if (std::abs(total - g.degree(x)) > 1e-9)
            throw ConstructionViolation("diagonal outflow differs from the base degree");
    }

    for (const auto& entry : coupling_marginal_check(coupling))
        if (!entry.pass)
            throw ConstructionViolation("coupling tensor identity failed: " + entry.note);
    return coupling;
}

std::vector<ReportEntry> coupling_marginal_check(const CouplingGraph& coupling,
                                                 double tolerance) {
    const Graph& g = coupling.base();
    const int n = g.size();

    auto laplacian = [&](const std::vector<double>& f) {
        std::vector<double> out(static_cast<std::size_t>(coupling.states()), 0.0);
        for (int s = 0; s < coupling.states(); ++s) {
            double acc = 0.0;
            for (const auto& [to, q] : coupling.row(s))
                acc += q * (f[static_cast<std::size_t>(to)] - f[static_cast<std::size_t>(s)]);
            out[static_cast<std::size_t>(s)] = acc;
        }
        return out;
    };

    double worst_left = 0.0, worst_right = 0.0;
    std::string where_left = "-", where_right = "-";
    for (int v = 0; v < n; ++v) {
        std::vector<double> f(static_cast<std::size_t>(n), 0.0);
        f[static_cast<std::size_t>(v)] = 1.0;
        std::vector<double> lf = g.laplacian(f);

        std::vector<double> left(static_cast<std::size_t>(coupling.states()));
        std::vector<double> right(static_cast<std::size_t>(coupling.states()));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                left[static_cast<std::size_t>(coupling.state(x, y))] = f[static_cast<std::size_t>(x)];
                right[static_cast<std::size_t>(coupling.state(x, y))] = f[static_cast<std::size_t>(y)];
            }
        std::vector<double> dl = laplacian(left);
        std::vector<double> dr = laplacian(right);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                int s = coupling.state(x, y);
                double el = std::abs(dl[static_cast<std::size_t>(s)] - lf[static_cast<std::size_t>(x)]);
                double er = std::abs(dr[static_cast<std::size_t>(s)] - lf[static_cast<std::size_t>(y)]);
                if (el > worst_left) {
                    worst_left = el;
                    where_left = "f=1_" + g.name(v) + " at (" + g.name(x) + "," + g.name(y) + ")";
                }
                if (er > worst_right) {
                    worst_right = er;
                    where_right = "f=1_" + g.name(v) + " at (" + g.name(x) + "," + g.name(y) + ")";
                }
            }
    }

    std::vector<ReportEntry> entries;
    entries.push_back(make_entry("coupling_marginal_first",
                                 "coupling Laplacian of f(x) reproduces (Delta f)(x)", worst_left,
                                 0.0, tolerance, where_left));
    entries.push_back(make_entry("coupling_marginal_second",
                                 "coupling Laplacian of f(y) reproduces (Delta f)(y)", worst_right,
                                 0.0, tolerance, where_right));
    return entries;
}

std::vector<ReportEntry> coupling_heat_bound(const CouplingGraph& coupling,
                                             const std::vector<double>& t_grid,
                                             const CouplingHeatOptions& opts) {
    const Graph& g = coupling.base();
    CurvatureMap cert = curvature_all(g, PairScope::all);
    if (!cert.nonneg && !opts.force)
        throw CurvatureNotCertified("min kappa = " + std::to_string(cert.min_kappa) +
                                    "; pass force to run informationally");
    const bool informational = !cert.nonneg;
    const std::string note_suffix = informational ? " precondition-not-met" : "";

    const auto& d = g.distances();
    HeatOperator heat = coupling.heat_operator(opts.heat_tol);
    std::vector<double> w = coupling.off_diagonal_indicator();

    std::vector<ReportEntry> entries;
    for (double t : t_grid) {
        std::vector<double> pt = heat.apply(w, t);
        std::vector<double> prof = phi_profile(g.q_min(), t, g.diameter(), opts.heat_tol);

        double worst_phi = 1e300, phi_lhs = 0.0, phi_rhs = 0.0;
        double worst_sqrt = 1e300, sqrt_lhs = 0.0, sqrt_rhs = 0.0;
        std::string where_phi = "-", where_sqrt = "-";
        for (int x = 0; x < g.size(); ++x) {
            for (int y = 0; y < g.size(); ++y) {
                int s = coupling.state(x, y);
                double lhs = pt[static_cast<std::size_t>(s)];
                double bound_phi = prof[static_cast<std::size_t>(d(x, y))];
                double bound_sqrt =
                    t > 0.0 ? d(x, y) / (2.0 * std::sqrt(t * g.q_min())) : (x == y ? 0.0 : 1e300);
                if (bound_phi - lhs < worst_phi) {
                    worst_phi = bound_phi - lhs;
                    phi_lhs = lhs;
                    phi_rhs = bound_phi;
                    where_phi = "(" + g.name(x) + "," + g.name(y) + ")";
                }
                if (bound_sqrt - lhs < worst_sqrt) {
                    worst_sqrt = bound_sqrt - lhs;
                    sqrt_lhs = lhs;
                    sqrt_rhs = bound_sqrt;
                    where_sqrt = "(" + g.name(x) + "," + g.name(y) + ")";
                }
            }
        }

        // The second half of the chain: phi itself under the square-root
        // bound at the distances realized in the graph.
        double worst_chain = 1e300, chain_lhs = 0.0, chain_rhs = 0.0;
        if (t > 0.0) {
            for (int r = 1; r <= g.diameter(); ++r) {
                double lhs = prof[static_cast<std::size_t>(r)];
                double rhs = r / (2.0 * std::sqrt(t * g.q_min()));
                if (rhs - lhs < worst_chain) {
                    worst_chain = rhs - lhs;
                    chain_lhs = lhs;
                    chain_rhs = rhs;
                }
            }
        } else {
            worst_chain = 0.0;
        }

        std::ostringstream tn;
        tn << "t=" << t;
        ReportEntry a = make_entry("coupling_heat_phi",
                                   "P~_t 1_W (x,y) <= phi_t(d(x,y))", phi_lhs, phi_rhs,
                                   opts.slack_tol, tn.str() + " worst " + where_phi + note_suffix);
        ReportEntry b = make_entry("coupling_heat_sqrt",
                                   "P~_t 1_W (x,y) <= d(x,y) / (2 sqrt(t q_min))", sqrt_lhs,
                                   sqrt_rhs, opts.slack_tol,
                                   tn.str() + " worst " + where_sqrt + note_suffix);
        ReportEntry c = make_entry("coupling_phi_sqrt",
                                   "phi_t(r) <= r / (2 sqrt(t q_min)) for realized distances",
                                   chain_lhs, chain_rhs, opts.slack_tol, tn.str() + note_suffix);
        a.informational = informational;
        b.informational = informational;
        c.informational = informational;
        entries.push_back(std::move(a));
        entries.push_back(std::move(b));
        entries.push_back(std::move(c));
    }
    return entries;
}

std::vector<ReportEntry> tensorization_check(const CouplingGraph& coupling,
                                             const std::vector<double>& f, double t,
                                             double tolerance) {
    const Graph& g = coupling.base();
    if (static_cast<int>(f.size()) != g.size()) throw BadParams("function length mismatch");
    HeatOperator base_heat = HeatOperator::from_graph(g, tolerance / 2.0);
    HeatOperator pair_heat = coupling.heat_operator(tolerance / 2.0);
    std::vector<double> ptf = base_heat.apply(f, t);

    std::vector<double> first(static_cast<std::size_t>(coupling.states()));
    std::vector<double> second(static_cast<std::size_t>(coupling.states()));
    for (int x = 0; x < g.size(); ++x)
        for (int y = 0; y < g.size(); ++y) {
            first[static_cast<std::size_t>(coupling.state(x, y))] = f[static_cast<std::size_t>(x)];
            second[static_cast<std::size_t>(coupling.state(x, y))] = f[static_cast<std::size_t>(y)];
        }
    std::vector<double> pt_first = pair_heat.apply(first, t);
    std::vector<double> pt_second = pair_heat.apply(second, t);

    double worst_first = 0.0, worst_second = 0.0;
    for (int x = 0; x < g.size(); ++x)
        for (int y = 0; y < g.size(); ++y) {
            int s = coupling.state(x, y);
            worst_first = std::max(worst_first, std::abs(pt_first[static_cast<std::size_t>(s)] -
                                                          ptf[static_cast<std::size_t>(x)]));
            worst_second = std::max(worst_second, std::abs(pt_second[static_cast<std::size_t>(s)] -
                                                            ptf[static_cast<std::size_t>(y)]));
        }

    std::ostringstream tn;
    tn << "t=" << t;
    std::vector<ReportEntry> entries;
    entries.push_back(make_entry("tensorization_first",
                                 "P~_t of f(x) equals (P_t f)(x) on the coupling", worst_first,
                                 0.0, tolerance, tn.str()));
    entries.push_back(make_entry("tensorization_second",
                                 "P~_t of f(y) equals (P_t f)(y) on the coupling", worst_second,
                                 0.0, tolerance, tn.str()));
    return entries;
}

McResult simulate_coupled_walks(const CouplingGraph& coupling, int x0, int y0, double t,
                                int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw BadParams("need at least one sample");
    if (t < 0.0) throw NegativeTime("horizon must be nonnegative");
    const Graph& g = coupling.base();
    const int start = coupling.state(x0, y0);

    std::atomic<long> separated{0};
    parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        int s = start;
        double clock = 0.0;
        for (;;) {
            auto [x, y] = coupling.endpoints(s);
            if (x == y) return;  // diagonal is invariant: walkers stay merged
            double total = 0.0;
            for (const auto& [to, q] : coupling.row(s)) total += q;
            if (total <= 0.0) break;
            double u = rng.next_double();
            clock += -std::log(1.0 - u) / total;
            if (clock > t) break;
            double pick = rng.next_double() * total;
            double acc = 0.0;
            int target = coupling.row(s).back().first;
            for (const auto& [to, q] : coupling.row(s)) {
                acc += q;
                if (pick < acc) {
                    target = to;
                    break;
                }
            }
            s = target;
        }
        auto [x, y] = coupling.endpoints(s);
        if (x != y) separated.fetch_add(1);
    });

    McResult res;
    res.n_samples = n_samples;
    res.p_hat = static_cast<double>(separated.load()) / n_samples;
    res.std_error = std::sqrt(res.p_hat * (1.0 - res.p_hat) / n_samples);
    const double z99 = 2.5758293035489004;
    res.ci_low = res.p_hat - z99 * res.std_error;
    res.ci_high = res.p_hat + z99 * res.std_error;
    res.sqrt_bound = t > 0.0 ? g.distances()(x0, y0) / (2.0 * std::sqrt(t * g.q_min()))
                             : std::numeric_limits<double>::infinity();
    if (res.ci_low > res.sqrt_bound)
        throw ConstructionViolation("separation estimate exceeds the coupling bound");
    return res;
}

}  // namespace curvlab
