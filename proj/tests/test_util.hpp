#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "curvlab/graph.hpp"
#include "curvlab/rng.hpp"

namespace curvlab::testutil {

// The standing corpus used across suites: named families plus seeded random
// reversible graphs.
inline std::vector<std::pair<std::string, Graph>> named_corpus() {
    std::vector<std::pair<std::string, Graph>> corpus;
    corpus.emplace_back("K2", generate_complete(2));
    corpus.emplace_back("K3", generate_complete(3));
    corpus.emplace_back("K5", generate_complete(5));
    corpus.emplace_back("C4", generate_cycle(4));
    corpus.emplace_back("C5", generate_cycle(5));
    corpus.emplace_back("C6", generate_cycle(6));
    corpus.emplace_back("C8", generate_cycle(8));
    corpus.emplace_back("P4", generate_path(4));
    corpus.emplace_back("Q3", generate_hypercube(3));
    corpus.emplace_back("Q4", generate_hypercube(4));
    corpus.emplace_back("T4x4", generate_torus2d(4, 4));
    return corpus;
}

// Connected reversible graph with random rates: a random spanning tree plus
// extra edges, symmetric edge weights w and random vertex masses m, rates
// q(x,y) = w(x,y)/m(x) so detailed balance holds exactly.
inline Graph random_reversible_graph(std::uint64_t seed, int n) {
    CounterRng rng(seed, 7001);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));

    std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    auto connect = [&](int a, int b) {
        if (w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 0.0) {
            double weight = rng.next_double(0.5, 2.0);
            w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = weight;
            w[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = weight;
        }
    };
    for (int v = 1; v < n; ++v) connect(v, static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v))));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.next_double() < 0.3) connect(a, b);

    std::vector<double> m(static_cast<std::size_t>(n));
    for (double& v : m) v = rng.next_double(0.5, 2.0);

    std::vector<RateEntry> rates;
    std::map<std::string, double> measure;
    for (int v = 0; v < n; ++v) measure[names[static_cast<std::size_t>(v)]] = m[static_cast<std::size_t>(v)];
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] > 0.0)
                rates.push_back({names[static_cast<std::size_t>(a)], names[static_cast<std::size_t>(b)],
                                 w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] /
                                     m[static_cast<std::size_t>(a)]});
    return build_graph(names, rates, measure);
}

inline std::vector<std::pair<std::string, Graph>> full_corpus(int random_seeds = 20) {
    auto corpus = named_corpus();
    for (int s = 0; s < random_seeds; ++s) {
        int n = 4 + static_cast<int>(CounterRng(static_cast<std::uint64_t>(s), 7002).next_below(7));
        corpus.emplace_back("rand" + std::to_string(s),
                            random_reversible_graph(static_cast<std::uint64_t>(s) + 1, n));
    }
    return corpus;
}

// Two triangles joined by a bridge; the bridge pair has negative curvature.
inline Graph dumbbell_graph() {
    std::vector<std::string> names{"a0", "a1", "a2", "b0", "b1", "b2"};
    std::vector<std::pair<std::string, std::string>> edges{
        {"a0", "a1"}, {"a1", "a2"}, {"a2", "a0"},
        {"b0", "b1"}, {"b1", "b2"}, {"b2", "b0"},
        {"a0", "b0"}};
    std::vector<RateEntry> rates;
    for (const auto& [u, v] : edges) {
        rates.push_back({u, v, 1.0});
        rates.push_back({v, u, 1.0});
    }
    return build_graph(names, rates);
}

inline std::vector<double> random_function(std::uint64_t seed, int n, double lo = -1.0,
                                           double hi = 1.0) {
    CounterRng rng(seed, 7003);
    std::vector<double> f(static_cast<std::size_t>(n));
    for (double& v : f) v = rng.next_double(lo, hi);
    return f;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

}  // namespace curvlab::testutil
