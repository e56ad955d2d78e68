#pragma once

#include <string>

#include <json.hpp>

#include "curvlab/graph.hpp"

namespace curvlab {

// JSON graph document:
//   {"vertices": ["a", ...],
//    "edges": [{"u": "a", "v": "b", "q_uv": 1.0, "q_vu": 2.0}, ...],
//    "measure": {"a": 1.0, ...}}
// q_vu defaults to q_uv; a missing measure means m == 1.
Graph graph_from_json(const nlohmann::ordered_json& doc, const GraphOptions& opts = {});
nlohmann::ordered_json graph_to_json(const Graph& g);

// TSV edge list "u<TAB>v<TAB>rate" with symmetric rates and m == 1; '#'
// starts a comment line.
Graph graph_from_tsv(const std::string& text, const GraphOptions& opts = {});

// Dispatch on extension: .tsv parses as TSV, anything else as JSON.
Graph load_graph_file(const std::string& path, const GraphOptions& opts = {});
void save_graph_file(const Graph& g, const std::string& path);

}  // namespace curvlab
