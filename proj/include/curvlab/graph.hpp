#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace curvlab {

// Hop-count metric of a connected graph.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(int n, std::vector<int> d) : n_(n), d_(std::move(d)) {}

    int operator()(int x, int y) const { return d_[static_cast<std::size_t>(x) * n_ + y]; }
    int size() const { return n_; }
    int max() const;

private:
    int n_ = 0;
    std::vector<int> d_;
};

struct RateEntry {
    std::string u;
    std::string v;
    double rate;
};

struct GraphOptions {
    // With this set, build_graph accepts disconnected input; distance-based
    // operations on such a graph still throw DisconnectedGraph.
    bool allow_disconnected = false;
};

// Finite weighted reversible graph: positive transition rates q(x,y) with an
// invariant measure m satisfying detailed balance q(x,y)m(x) = q(y,x)m(y).
// Immutable after construction; all member queries are safe to call
// concurrently.
class Graph {
public:
    static constexpr double kReversibilityRelTol = 1e-12;

    int size() const { return n_; }
    const std::string& name(int v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    // Dense index of a named vertex; throws BadParams on unknown names.
    int index(const std::string& name) const;

    double rate(int x, int y) const { return q_[static_cast<std::size_t>(x) * n_ + y]; }
    double measure(int x) const { return m_[v_cast(x)]; }
    const std::vector<int>& neighbors(int x) const { return adj_[v_cast(x)]; }
    bool adjacent(int x, int y) const { return rate(x, y) > 0.0; }

    // Deg(x): total rate out of x.
    double degree(int x) const { return deg_[v_cast(x)]; }
    double max_degree() const;
    double total_measure() const;

    double q_min() const { return q_min_; }
    bool connected() const { return connected_; }

    // Throw DisconnectedGraph unless the graph is connected.
    const DistanceMatrix& distances() const;
    int diameter() const;

    // Laplacian Delta f(x) = sum_y q(x,y) (f(y) - f(x)).
    std::vector<double> laplacian(const std::vector<double>& f) const;

    // Sorted dense indices of the closed ball of radius r around x.
    std::vector<int> ball(int x, int r) const;

    // Vertex sets of connected components, each sorted.
    std::vector<std::vector<int>> components() const;
    // The induced subgraph on a component (vertex names preserved).
    Graph subgraph(const std::vector<int>& vertices) const;

    friend Graph build_graph(std::vector<std::string> vertices,
                             const std::vector<RateEntry>& rates,
                             const std::map<std::string, double>& measure,
                             const GraphOptions& opts);

private:
    Graph() = default;
    std::size_t v_cast(int x) const { return static_cast<std::size_t>(x); }

    int n_ = 0;
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<double> q_;  // dense n*n, row-major
    std::vector<double> m_;
    std::vector<std::vector<int>> adj_;
    std::vector<double> deg_;
    double q_min_ = 0.0;
    bool connected_ = false;
    DistanceMatrix dist_;
    int diameter_ = 0;
};

// Validates rates (positive, symmetric support, detailed balance w.r.t. the
// measure) and connectivity. An empty measure map means m == 1 everywhere.
Graph build_graph(std::vector<std::string> vertices,
                  const std::vector<RateEntry>& rates,
                  const std::map<std::string, double>& measure = {},
                  const GraphOptions& opts = {});

// Unweighted families (all rates 1, m == 1).
Graph generate_cycle(int n);
Graph generate_path(int n);
Graph generate_complete(int n);
Graph generate_hypercube(int dim);
Graph generate_torus2d(int rows, int cols);
// Reversible birth-death chain on levels 0..n with constant rate between
// consecutive levels.
Graph generate_birth_death(int levels, double rate);
Graph cartesian_product(const Graph& a, const Graph& b);

// Directed rate entries (from, to, rate) of the constant-rate birth-death
// chain on levels 0..n. With absorbing set, level 0 has no outgoing rates;
// that chain is not reversible and is consumed by the heat module only.
std::vector<std::tuple<int, int, double>> birth_death_rates(int levels, double rate,
                                                            bool absorbing);

// String-keyed dispatcher used by the CLI; throws BadParams.
Graph generate(const std::string& family, const std::map<std::string, std::string>& params);

}  // namespace curvlab
