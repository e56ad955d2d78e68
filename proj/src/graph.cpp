#include "curvlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

int DistanceMatrix::max() const {
    int best = 0;
    for (int d : d_) best = std::max(best, d);
    return best;
}

int Graph::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw BadParams("unknown vertex '" + name + "'");
    return it->second;
}

double Graph::max_degree() const {
    double best = 0.0;
    for (double d : deg_) best = std::max(best, d);
    return best;
}

double Graph::total_measure() const {
    double s = 0.0;
    for (double v : m_) s += v;
    return s;
}

const DistanceMatrix& Graph::distances() const {
    if (!connected_) throw DisconnectedGraph("distances require a connected graph");
    return dist_;
}

int Graph::diameter() const {
    if (!connected_) throw DisconnectedGraph("diameter requires a connected graph");
    return diameter_;
}

std::vector<double> Graph::laplacian(const std::vector<double>& f) const {
    std::vector<double> out(v_cast(n_), 0.0);
    for (int x = 0; x < n_; ++x) {
        double acc = 0.0;
        for (int y : adj_[v_cast(x)]) acc += rate(x, y) * (f[v_cast(y)] - f[v_cast(x)]);
        out[v_cast(x)] = acc;
    }
    return out;
}

std::vector<int> Graph::ball(int x, int r) const {
    std::vector<int> level(v_cast(n_), -1);
    std::deque<int> queue{x};
    level[v_cast(x)] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (level[v_cast(u)] == r) continue;
        for (int v : adj_[v_cast(u)]) {
            if (level[v_cast(v)] < 0) {
                level[v_cast(v)] = level[v_cast(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (level[v_cast(v)] >= 0) out.push_back(v);
    return out;
}

std::vector<std::vector<int>> Graph::components() const {
    std::vector<int> comp(v_cast(n_), -1);
    int ncomp = 0;
    for (int s = 0; s < n_; ++s) {
        if (comp[v_cast(s)] >= 0) continue;
        comp[v_cast(s)] = ncomp;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj_[v_cast(u)]) {
                if (comp[v_cast(v)] < 0) {
                    comp[v_cast(v)] = ncomp;
                    queue.push_back(v);
                }
            }
        }
        ++ncomp;
    }
    std::vector<std::vector<int>> out(static_cast<std::size_t>(ncomp));
    for (int v = 0; v < n_; ++v) out[static_cast<std::size_t>(comp[v_cast(v)])].push_back(v);
    return out;
}

Graph Graph::subgraph(const std::vector<int>& vertices) const {
    std::vector<std::string> names;
    names.reserve(vertices.size());
    for (int v : vertices) names.push_back(names_[v_cast(v)]);
    std::vector<RateEntry> rates;
    std::map<std::string, double> measure;
    for (int u : vertices) {
        measure[names_[v_cast(u)]] = m_[v_cast(u)];
        for (int v : neighbors(u))
            if (std::find(vertices.begin(), vertices.end(), v) != vertices.end())
                rates.push_back({names_[v_cast(u)], names_[v_cast(v)], rate(u, v)});
    }
    GraphOptions opts;
    opts.allow_disconnected = true;
    return build_graph(std::move(names), rates, measure, opts);
}

Graph build_graph(std::vector<std::string> vertices, const std::vector<RateEntry>& rates,
                  const std::map<std::string, double>& measure, const GraphOptions& opts) {
    if (vertices.empty()) throw BadParams("graph needs at least one vertex");
    Graph g;
    g.n_ = static_cast<int>(vertices.size());
    g.names_ = std::move(vertices);
    for (int i = 0; i < g.n_; ++i) {
        if (!g.index_.emplace(g.names_[static_cast<std::size_t>(i)], i).second)
            throw BadParams("duplicate vertex id '" + g.names_[static_cast<std::size_t>(i)] + "'");
    }

    const std::size_t n = static_cast<std::size_t>(g.n_);
    g.q_.assign(n * n, 0.0);
    g.m_.assign(n, 1.0);
    if (!measure.empty()) {
        for (const auto& [name, mass] : measure) {
            auto it = g.index_.find(name);
            if (it == g.index_.end()) throw BadParams("measure names unknown vertex '" + name + "'");
            if (!(mass > 0.0) || !std::isfinite(mass))
                throw BadParams("measure of '" + name + "' must be positive and finite");
            g.m_[static_cast<std::size_t>(it->second)] = mass;
        }
        if (measure.size() != n) throw BadParams("measure must cover every vertex or be omitted");
    }

    for (const auto& e : rates) {
        int u = g.index(e.u);
        int v = g.index(e.v);
        if (u == v) throw BadParams("self-loop on '" + e.u + "'");
        if (!(e.rate > 0.0) || !std::isfinite(e.rate))
            throw NonPositiveRate("rate " + e.u + "->" + e.v + " must be positive and finite");
        std::size_t idx = n * static_cast<std::size_t>(u) + static_cast<std::size_t>(v);
        if (g.q_[idx] != 0.0) throw BadParams("duplicate rate entry " + e.u + "->" + e.v);
        g.q_[idx] = e.rate;
    }

    g.adj_.assign(n, {});
    g.deg_.assign(n, 0.0);
    g.q_min_ = std::numeric_limits<double>::infinity();
    bool any_edge = false;
    for (int x = 0; x < g.n_; ++x) {
        for (int y = 0; y < g.n_; ++y) {
            double qxy = g.rate(x, y);
            double qyx = g.rate(y, x);
            if ((qxy > 0.0) != (qyx > 0.0))
                throw AsymmetricSupport("edge " + g.names_[static_cast<std::size_t>(x)] + "~" +
                                        g.names_[static_cast<std::size_t>(y)] +
                                        " present in one direction only");
            if (qxy <= 0.0) continue;
            any_edge = true;
            double lhs = qxy * g.measure(x);
            double rhs = qyx * g.measure(y);
            if (std::abs(lhs - rhs) > Graph::kReversibilityRelTol * std::max(std::abs(lhs), std::abs(rhs))) {
                std::ostringstream msg;
                msg << "detailed balance fails on " << g.names_[static_cast<std::size_t>(x)] << "~"
                    << g.names_[static_cast<std::size_t>(y)] << ": q*m = " << lhs << " vs " << rhs;
                throw NonReversible(msg.str());
            }
            g.adj_[static_cast<std::size_t>(x)].push_back(y);
            g.deg_[static_cast<std::size_t>(x)] += qxy;
            g.q_min_ = std::min(g.q_min_, qxy);
        }
    }
    if (!any_edge) g.q_min_ = 0.0;
    if (g.n_ > 1 && !any_edge && !opts.allow_disconnected)
        throw DisconnectedGraph("graph has no edges");

    // BFS from vertex 0 settles connectivity and seeds the full matrix.
    std::vector<int> dist0(n, -1);
    std::deque<int> queue{0};
    dist0[0] = 0;
    std::size_t seen = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.adj_[static_cast<std::size_t>(u)]) {
            if (dist0[static_cast<std::size_t>(v)] < 0) {
                dist0[static_cast<std::size_t>(v)] = dist0[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
                ++seen;
            }
        }
    }
    g.connected_ = (seen == n);
    if (!g.connected_ && !opts.allow_disconnected)
        throw DisconnectedGraph("input graph is disconnected (pass --per-component to split)");

    if (g.connected_) {
        std::vector<int> all(n * n, -1);
        for (int s = 0; s < g.n_; ++s) {
            std::vector<int> d(n, -1);
            std::deque<int> q2{s};
            d[static_cast<std::size_t>(s)] = 0;
            while (!q2.empty()) {
                int u = q2.front();
                q2.pop_front();
                for (int v : g.adj_[static_cast<std::size_t>(u)]) {
                    if (d[static_cast<std::size_t>(v)] < 0) {
                        d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
                        q2.push_back(v);
                    }
                }
            }
            for (int t = 0; t < g.n_; ++t)
                all[n * static_cast<std::size_t>(s) + static_cast<std::size_t>(t)] =
                    d[static_cast<std::size_t>(t)];
        }
        g.dist_ = DistanceMatrix(g.n_, std::move(all));
        g.diameter_ = g.dist_.max();
    }
    return g;
}

namespace {

std::string num_name(int i) { return std::to_string(i); }

Graph from_unit_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) names.push_back(num_name(i));
    std::vector<RateEntry> rates;
    rates.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        rates.push_back({names[static_cast<std::size_t>(u)], names[static_cast<std::size_t>(v)], 1.0});
        rates.push_back({names[static_cast<std::size_t>(v)], names[static_cast<std::size_t>(u)], 1.0});
    }
    return build_graph(names, rates);
}

}  // namespace

Graph generate_cycle(int n) {
    if (n < 3) throw BadParams("cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return from_unit_edges(n, edges);
}

Graph generate_path(int n) {
    if (n < 2) throw BadParams("path needs n >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return from_unit_edges(n, edges);
}

Graph generate_complete(int n) {
    if (n < 2) throw BadParams("complete graph needs n >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return from_unit_edges(n, edges);
}

Graph generate_hypercube(int dim) {
    if (dim < 1 || dim > 16) throw BadParams("hypercube dimension must be in 1..16");
    int n = 1 << dim;
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::string s(static_cast<std::size_t>(dim), '0');
        for (int b = 0; b < dim; ++b)
            if (v & (1 << b)) s[static_cast<std::size_t>(dim - 1 - b)] = '1';
        names.push_back(s);
    }
    std::vector<RateEntry> rates;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < dim; ++b)
            rates.push_back({names[static_cast<std::size_t>(v)],
                             names[static_cast<std::size_t>(v ^ (1 << b))], 1.0});
    return build_graph(names, rates);
}

Graph generate_torus2d(int rows, int cols) {
    if (rows < 3 || cols < 3) throw BadParams("torus2d needs rows, cols >= 3");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            edges.emplace_back(id(r, c), id(r, (c + 1) % cols));
            edges.emplace_back(id(r, c), id((r + 1) % rows, c));
        }
    }
    return from_unit_edges(rows * cols, edges);
}

Graph generate_birth_death(int levels, double rate) {
    if (levels < 1) throw BadParams("birth-death chain needs at least levels 0..1");
    if (!(rate > 0.0)) throw BadParams("birth-death rate must be positive");
    std::vector<std::string> names;
    for (int i = 0; i <= levels; ++i) names.push_back(num_name(i));
    std::vector<RateEntry> rates;
    for (int i = 0; i < levels; ++i) {
        rates.push_back({names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(i + 1)], rate});
        rates.push_back({names[static_cast<std::size_t>(i + 1)], names[static_cast<std::size_t>(i)], rate});
    }
    return build_graph(names, rates);
}

std::vector<std::tuple<int, int, double>> birth_death_rates(int levels, double rate,
                                                            bool absorbing) {
    if (levels < 1) throw BadParams("birth-death chain needs at least levels 0..1");
    if (!(rate > 0.0)) throw BadParams("birth-death rate must be positive");
    std::vector<std::tuple<int, int, double>> out;
    for (int x = 0; x <= levels; ++x) {
        if (x == 0 && absorbing) continue;
        if (x > 0) out.emplace_back(x, x - 1, rate);
        if (x < levels) out.emplace_back(x, x + 1, rate);
    }
    return out;
}

Graph cartesian_product(const Graph& a, const Graph& b) {
    std::vector<std::string> names;
    std::map<std::string, double> measure;
    names.reserve(static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size()));
    for (int u = 0; u < a.size(); ++u)
        for (int v = 0; v < b.size(); ++v) {
            std::string nm = "(" + a.name(u) + "," + b.name(v) + ")";
            names.push_back(nm);
            measure[nm] = a.measure(u) * b.measure(v);
        }
    std::vector<RateEntry> rates;
    for (int u = 0; u < a.size(); ++u)
        for (int v = 0; v < b.size(); ++v) {
            const std::string& from = names[static_cast<std::size_t>(u * b.size() + v)];
            for (int u2 : a.neighbors(u))
                rates.push_back({from, names[static_cast<std::size_t>(u2 * b.size() + v)], a.rate(u, u2)});
            for (int v2 : b.neighbors(v))
                rates.push_back({from, names[static_cast<std::size_t>(u * b.size() + v2)], b.rate(v, v2)});
        }
    return build_graph(names, rates, measure);
}

namespace {

int int_param(const std::map<std::string, std::string>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw BadParams("missing parameter '" + key + "'");
    try {
        std::size_t pos = 0;
        int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw BadParams("parameter '" + key + "' must be an integer, got '" + it->second + "'");
    }
}

double double_param(const std::map<std::string, std::string>& params, const std::string& key,
                    double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw BadParams("parameter '" + key + "' must be a number, got '" + it->second + "'");
    }
}

// "family:arg1:arg2" spec for product factors.
Graph parse_factor(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw BadParams("empty factor spec");
    std::map<std::string, std::string> params;
    if (parts.size() > 1) params["n"] = parts[1];
    if (parts.size() > 2) params["m"] = parts[2];
    return generate(parts[0], params);
}

}  // namespace

Graph generate(const std::string& family, const std::map<std::string, std::string>& params) {
    if (family == "cycle") return generate_cycle(int_param(params, "n"));
    if (family == "path") return generate_path(int_param(params, "n"));
    if (family == "complete") return generate_complete(int_param(params, "n"));
    if (family == "hypercube") return generate_hypercube(int_param(params, "n"));
    if (family == "torus2d") {
        int rows = int_param(params, "n");
        int cols = params.count("m") ? int_param(params, "m") : rows;
        return generate_torus2d(rows, cols);
    }
    if (family == "birth_death") {
        if (params.count("absorbing"))
            throw BadParams("the absorbing birth-death chain is directed; it is available "
                            "through the heat module, not as a reversible graph");
        return generate_birth_death(int_param(params, "n"), double_param(params, "rate", 1.0));
    }
    if (family == "cartesian_product") {
        auto a = params.find("a");
        auto b = params.find("b");
        if (a == params.end() || b == params.end())
            throw BadParams("cartesian_product needs a=<family:n[:m]> and b=<family:n[:m]>");
        return cartesian_product(parse_factor(a->second), parse_factor(b->second));
    }
    throw BadParams("unknown family '" + family + "'");
}

}  // namespace curvlab
