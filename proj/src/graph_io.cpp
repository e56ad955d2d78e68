#include "curvlab/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

Graph graph_from_json(const nlohmann::ordered_json& doc, const GraphOptions& opts) {
    if (!doc.is_object()) throw ParseError("graph document must be a JSON object");
    std::vector<std::string> vertices;
    std::vector<RateEntry> rates;
    std::map<std::string, double> measure;
    try {
        if (!doc.contains("vertices") || !doc.at("vertices").is_array())
            throw ParseError("field 'vertices' must be an array of ids");
        for (const auto& v : doc.at("vertices")) vertices.push_back(v.get<std::string>());

        if (!doc.contains("edges") || !doc.at("edges").is_array())
            throw ParseError("field 'edges' must be an array");
        std::size_t idx = 0;
        for (const auto& e : doc.at("edges")) {
            if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("q_uv"))
                throw ParseError("edges[" + std::to_string(idx) +
                                 "] needs fields u, v, q_uv");
            std::string u = e.at("u").get<std::string>();
            std::string v = e.at("v").get<std::string>();
            double quv = e.at("q_uv").get<double>();
            double qvu = e.contains("q_vu") ? e.at("q_vu").get<double>() : quv;
            rates.push_back({u, v, quv});
            rates.push_back({v, u, qvu});
            ++idx;
        }
        if (doc.contains("measure")) {
            if (!doc.at("measure").is_object())
                throw ParseError("field 'measure' must map vertex ids to masses");
            for (const auto& [name, mass] : doc.at("measure").items())
                measure[name] = mass.get<double>();
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("graph document: ") + ex.what());
    }
    return build_graph(std::move(vertices), rates, measure, opts);
}

nlohmann::ordered_json graph_to_json(const Graph& g) {
    nlohmann::ordered_json doc;
    doc["vertices"] = g.names();
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (int x = 0; x < g.size(); ++x) {
        for (int y : g.neighbors(x)) {
            if (y < x) continue;  // one record per unordered edge
            nlohmann::ordered_json e;
            e["u"] = g.name(x);
            e["v"] = g.name(y);
            e["q_uv"] = g.rate(x, y);
            if (g.rate(y, x) != g.rate(x, y)) e["q_vu"] = g.rate(y, x);
            edges.push_back(std::move(e));
        }
    }
    doc["edges"] = std::move(edges);
    bool unit_measure = true;
    for (int x = 0; x < g.size(); ++x)
        if (g.measure(x) != 1.0) unit_measure = false;
    if (!unit_measure) {
        nlohmann::ordered_json measure;
        for (int x = 0; x < g.size(); ++x) measure[g.name(x)] = g.measure(x);
        doc["measure"] = std::move(measure);
    }
    return doc;
}

Graph graph_from_tsv(const std::string& text, const GraphOptions& opts) {
    std::vector<std::string> vertices;
    std::map<std::string, bool> seen;
    std::vector<RateEntry> rates;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string u, v, rate_str;
        if (!std::getline(ls, u, '\t') || !std::getline(ls, v, '\t') ||
            !std::getline(ls, rate_str, '\t'))
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected u<TAB>v<TAB>rate");
        double rate = 0.0;
        try {
            std::size_t pos = 0;
            rate = std::stod(rate_str, &pos);
            if (pos != rate_str.size()) throw std::invalid_argument(rate_str);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad rate '" + rate_str + "'");
        }
        for (const auto& name : {u, v}) {
            if (!seen.count(name)) {
                seen[name] = true;
                vertices.push_back(name);
            }
        }
        rates.push_back({u, v, rate});
        rates.push_back({v, u, rate});
    }
    if (vertices.empty()) throw ParseError("empty TSV graph");
    return build_graph(std::move(vertices), rates, {}, opts);
}

Graph load_graph_file(const std::string& path, const GraphOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".tsv")
        return graph_from_tsv(buffer.str(), opts);
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& ex) {
        throw ParseError("'" + path + "': " + ex.what());
    }
    return graph_from_json(doc, opts);
}

void save_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << graph_to_json(g).dump(2) << '\n';
}

}  // namespace curvlab
