#include "curvlab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

constexpr double kLambdaSlack = 1.01;

double log_poisson_pmf(double mean, int k) {
    return -mean + k * std::log(mean) - std::lgamma(static_cast<double>(k) + 1.0);
}

int poisson_terms(double mean, double tolerance) {
    if (mean <= 0.0) return 0;
    double cum = 0.0;
    // Hard ceiling far beyond the Poisson bulk; the loop leaves long before.
    int cap = static_cast<int>(mean + 12.0 * std::sqrt(mean + 1.0) + 64.0);
    for (int k = 0; k <= cap; ++k) {
        cum += std::exp(log_poisson_pmf(mean, k));
        if (1.0 - cum <= tolerance) return k;
    }
    return cap;
}

}  // namespace

HeatOperator::HeatOperator(int n, const std::vector<std::tuple<int, int, double>>& rates,
                           std::vector<double> kill, double tolerance)
    : n_(n), tolerance_(tolerance) {
    if (n < 1) throw BadParams("generator needs at least one state");
    if (!(tolerance > 0.0)) throw BadParams("tolerance must be positive");
    rows_.assign(static_cast<std::size_t>(n), {});
    deg_.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& [from, to, rate] : rates) {
        if (from < 0 || from >= n || to < 0 || to >= n) throw BadParams("rate entry out of range");
        if (from == to) throw BadParams("self-rates are not part of the generator");
        if (rate < 0.0 || !std::isfinite(rate)) throw BadParams("rates must be nonnegative");
        if (rate == 0.0) continue;
        rows_[static_cast<std::size_t>(from)].emplace_back(to, rate);
        deg_[static_cast<std::size_t>(from)] += rate;
    }
    if (!kill.empty()) {
        if (static_cast<int>(kill.size()) != n) throw BadParams("kill vector length mismatch");
        for (int x = 0; x < n; ++x) {
            if (kill[static_cast<std::size_t>(x)] < 0.0)
                throw BadParams("kill rates must be nonnegative");
            deg_[static_cast<std::size_t>(x)] += kill[static_cast<std::size_t>(x)];
        }
    }
    for (auto& row : rows_) {
        std::sort(row.begin(), row.end());
        // merge duplicate targets
        std::size_t w = 0;
        for (std::size_t r = 0; r < row.size(); ++r) {
            if (w > 0 && row[w - 1].first == row[r].first)
                row[w - 1].second += row[r].second;
            else
                row[w++] = row[r];
        }
        row.resize(w);
    }
    double max_deg = 0.0;
    for (double d : deg_) max_deg = std::max(max_deg, d);
    lambda_ = max_deg > 0.0 ? kLambdaSlack * max_deg : 0.0;
}

HeatOperator HeatOperator::from_graph(const Graph& g, double tolerance) {
    std::vector<std::tuple<int, int, double>> rates;
    for (int x = 0; x < g.size(); ++x)
        for (int y : g.neighbors(x)) rates.emplace_back(x, y, g.rate(x, y));
    return HeatOperator(g.size(), rates, {}, tolerance);
}

int HeatOperator::term_count(double t) const {
    if (t < 0.0) throw NegativeTime("semigroup time must be nonnegative");
    return poisson_terms(lambda_ * t, tolerance_);
}

std::vector<double> HeatOperator::apply(const std::vector<double>& f, double t) const {
    return apply_with_terms(f, t, term_count(t));
}

std::vector<double> HeatOperator::apply_with_terms(const std::vector<double>& f, double t,
                                                   int min_terms) const {
    if (t < 0.0) throw NegativeTime("semigroup time must be nonnegative");
    if (static_cast<int>(f.size()) != n_) throw BadParams("function length mismatch");
    if (t == 0.0 || lambda_ == 0.0) return f;

    const double mean = lambda_ * t;
    const int terms = std::max(min_terms, term_count(t));
    const std::size_t n = static_cast<std::size_t>(n_);

    std::vector<double> acc(n, 0.0), v = f, next(n);
    double w0 = std::exp(log_poisson_pmf(mean, 0));
    for (std::size_t i = 0; i < n; ++i) acc[i] = w0 * v[i];
    for (int k = 1; k <= terms; ++k) {
        for (std::size_t x = 0; x < n; ++x) {
            double s = (1.0 - deg_[x] / lambda_) * v[x];
            for (const auto& [y, q] : rows_[x]) s += q / lambda_ * v[static_cast<std::size_t>(y)];
            next[x] = s;
        }
        std::swap(v, next);
        double w = std::exp(log_poisson_pmf(mean, k));
        if (w > 0.0)
            for (std::size_t i = 0; i < n; ++i) acc[i] += w * v[i];
    }
    return acc;
}

std::vector<double> dirichlet_heat(const Graph& g, const std::vector<bool>& in_s,
                                   const std::vector<double>& f, double t, double tolerance) {
    if (static_cast<int>(in_s.size()) != g.size() || static_cast<int>(f.size()) != g.size())
        throw BadParams("length mismatch");
    std::vector<std::tuple<int, int, double>> rates;
    for (int x = 0; x < g.size(); ++x) {
        if (!in_s[static_cast<std::size_t>(x)]) continue;
        for (int y : g.neighbors(x)) rates.emplace_back(x, y, g.rate(x, y));
    }
    HeatOperator op(g.size(), rates, {}, tolerance);
    std::vector<double> f0 = f;
    for (int x = 0; x < g.size(); ++x)
        if (!in_s[static_cast<std::size_t>(x)]) f0[static_cast<std::size_t>(x)] = 0.0;
    return op.apply(f0, t);
}

std::vector<double> phi_profile(double q_min, double t, int r_max, double tolerance) {
    if (!(q_min > 0.0)) throw BadParams("q_min must be positive");
    if (r_max < 0) throw BadParams("r_max must be nonnegative");
    if (t < 0.0) throw NegativeTime("semigroup time must be nonnegative");

    const double rate = 2.0 * q_min;
    if (t == 0.0) {
        std::vector<double> out(static_cast<std::size_t>(r_max) + 1, 1.0);
        out[0] = 0.0;
        return out;
    }

    // Interior levels carry total outflow 2 * rate; the truncation keeps the
    // boundary level's full diagonal via an explicit kill rate, so every
    // level behaves exactly like the infinite chain until the series ends.
    const double lambda = kLambdaSlack * 2.0 * rate;
    const int terms = poisson_terms(lambda * t, tolerance);
    const int levels = r_max + terms + 1;

    auto rates = birth_death_rates(levels, rate, /*absorbing=*/true);
    std::vector<double> kill(static_cast<std::size_t>(levels) + 1, 0.0);
    kill[static_cast<std::size_t>(levels)] = rate;
    HeatOperator op(levels + 1, rates, kill, tolerance);

    std::vector<double> f(static_cast<std::size_t>(levels) + 1, 1.0);
    f[0] = 0.0;
    std::vector<double> full = op.apply(f, t);
    full.resize(static_cast<std::size_t>(r_max) + 1);
    return full;
}

double phi(double q_min, double t, int r, double tolerance) {
    return phi_profile(q_min, t, r, tolerance)[static_cast<std::size_t>(r)];
}

double BirthDeathSolution::value(double t, int r) const {
    if (r < 0 || r > r_max) throw BadParams("level outside solved range");
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        if (t_grid[i] == t) return values[i][static_cast<std::size_t>(r)];
    throw BadParams("time not on the solved grid");
}

BirthDeathSolution solve_birth_death(double q_min, const std::vector<double>& t_grid, int r_max,
                                     double tolerance) {
    BirthDeathSolution sol;
    sol.q_min = q_min;
    sol.t_grid = t_grid;
    sol.r_max = r_max;
    for (double t : t_grid) sol.values.push_back(phi_profile(q_min, t, r_max, tolerance));
    double max_t = 0.0;
    for (double t : t_grid) max_t = std::max(max_t, t);
    sol.truncation_level =
        r_max + poisson_terms(kLambdaSlack * 4.0 * q_min * max_t, tolerance) + 1;
    return sol;
}

std::vector<ReportEntry> phi_properties_check(double q_min, const std::vector<double>& t_grid,
                                              int r_max, double slack_tol) {
    std::vector<ReportEntry> entries;
    for (double t : t_grid) {
        std::vector<double> prof = phi_profile(q_min, t, r_max + 1);
        const double rate2 = 2.0 * q_min;

        if (t > 0.0) {
            double worst = -1e300;
            int worst_r = 1;
            for (int r = 1; r <= r_max; ++r) {
                double v = rate2 * (prof[static_cast<std::size_t>(r + 1)] +
                                    prof[static_cast<std::size_t>(r - 1)] -
                                    2.0 * prof[static_cast<std::size_t>(r)]);
                if (v > worst) {
                    worst = v;
                    worst_r = r;
                }
            }
            std::ostringstream note;
            note << "t=" << t << " worst r=" << worst_r;
            entries.push_back(make_entry("phi_time_derivative",
                                         "d/dt phi_t(r) = 2 q_min (phi(r+1)+phi(r-1)-2 phi(r)) <= 0",
                                         worst, 0.0, slack_tol, note.str()));
        }

        {
            double worst = 1e300;
            int worst_r = 0;
            for (int r = 0; r <= r_max; ++r) {
                double v = prof[static_cast<std::size_t>(r + 1)] - prof[static_cast<std::size_t>(r)];
                if (v < worst) {
                    worst = v;
                    worst_r = r;
                }
            }
            std::ostringstream note;
            note << "t=" << t << " worst r=" << worst_r;
            entries.push_back(make_entry("phi_monotone_level", "phi_t(r) <= phi_t(r+1)", -worst,
                                         0.0, slack_tol, note.str()));
        }

        if (t > 0.0) {
            double worst_gap = 1e300;
            double worst_lhs = 0.0, worst_rhs = 0.0;
            int worst_r = 1;
            for (int r = 1; r <= r_max; ++r) {
                double lhs = prof[static_cast<std::size_t>(r)];
                double rhs = r / (2.0 * std::sqrt(t * q_min));
                if (rhs - lhs < worst_gap) {
                    worst_gap = rhs - lhs;
                    worst_lhs = lhs;
                    worst_rhs = rhs;
                    worst_r = r;
                }
            }
            std::ostringstream note;
            note << "t=" << t << " worst r=" << worst_r;
            entries.push_back(make_entry("phi_sqrt_bound", "phi_t(r) <= r / (2 sqrt(t q_min))",
                                         worst_lhs, worst_rhs, slack_tol, note.str()));
        }
    }
    return entries;
}

}  // namespace curvlab
