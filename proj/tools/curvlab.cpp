#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvlab/coupling.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/graph.hpp"
#include "curvlab/graph_io.hpp"
#include "curvlab/heat.hpp"
#include "curvlab/report.hpp"
#include "curvlab/spectral.hpp"
#include "curvlab/transport.hpp"
#include "curvlab/verify.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonOptions {
    std::string input;
    std::string family;
    std::string params;
    std::string out;
    std::string format = "table";
    bool per_component = false;
};

void add_graph_source(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--input", opts.input, "graph file (.json or .tsv)");
    cmd->add_option("--family", opts.family, "generated family name");
    cmd->add_option("--params", opts.params, "family parameters, e.g. n=6 or n=4,m=4");
    cmd->add_flag("--per-component", opts.per_component,
                  "split disconnected input and run per component");
}

void add_output(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--out", opts.out, "output path (stdout when omitted)");
    cmd->add_option("--format", opts.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
}

std::map<std::string, std::string> parse_params(const std::string& params) {
    std::map<std::string, std::string> out;
    if (params.empty()) return out;
    std::stringstream ss(params);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw curvlab::BadParams("expected key=value in --params, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

std::vector<double> parse_t_list(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            double t = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            if (t < 0.0) throw std::invalid_argument(item);
            out.push_back(t);
        } catch (const std::exception&) {
            throw curvlab::BadParams("bad time value '" + item + "' in --t");
        }
    }
    if (out.empty()) throw curvlab::BadParams("--t needs at least one value");
    return out;
}

// Load the requested graphs: a single connected graph, or per-component
// pieces when --per-component is set.
std::vector<curvlab::Graph> load_graphs(const CommonOptions& opts) {
    if (opts.input.empty() == opts.family.empty())
        throw curvlab::BadParams("provide exactly one of --input or --family");
    curvlab::GraphOptions gopts;
    gopts.allow_disconnected = opts.per_component;
    curvlab::Graph g = opts.input.empty()
                           ? curvlab::generate(opts.family, parse_params(opts.params))
                           : curvlab::load_graph_file(opts.input, gopts);
    if (!opts.per_component || g.connected()) return {std::move(g)};
    std::vector<curvlab::Graph> parts;
    for (const auto& comp : g.components()) parts.push_back(g.subgraph(comp));
    return parts;
}

void write_output(const CommonOptions& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opts.out);
    if (!f) throw curvlab::ParseError("cannot write '" + opts.out + "'");
    f << text;
}

std::string dump_components(const CommonOptions& opts, std::vector<ordered_json> parts,
                            const std::vector<std::string>& tables) {
    if (opts.format == "table") {
        std::string out;
        for (const auto& t : tables) out += t;
        return out;
    }
    if (parts.size() == 1) return parts[0].dump(2) + "\n";
    ordered_json arr = ordered_json::array();
    for (auto& p : parts) arr.push_back(std::move(p));
    return arr.dump(2) + "\n";
}

int run_gen(const CommonOptions& opts) {
    curvlab::Graph g = curvlab::generate(opts.family, parse_params(opts.params));
    write_output(opts, curvlab::graph_to_json(g).dump(2) + "\n");
    return 0;
}

int run_curvature(const CommonOptions& opts, const std::string& pairs) {
    auto scope = pairs == "edges" ? curvlab::PairScope::edges : curvlab::PairScope::all;
    std::vector<ordered_json> parts;
    std::vector<std::string> tables;
    for (const auto& g : load_graphs(opts)) {
        curvlab::CurvatureMap map = curvlab::curvature_all(g, scope);
        ordered_json j;
        ordered_json entries = ordered_json::array();
        std::ostringstream table;
        table << "pair\tkappa\n";
        for (const auto& [xy, k] : map.kappa) {
            entries.push_back({{"x", g.name(xy.first)}, {"y", g.name(xy.second)}, {"kappa", k}});
            table << g.name(xy.first) << "," << g.name(xy.second) << "\t" << k << "\n";
        }
        j["pairs"] = std::move(entries);
        j["min_kappa"] = map.min_kappa;
        j["nonneg"] = map.nonneg;
        table << "min kappa = " << map.min_kappa << (map.nonneg ? " (nonnegative)" : " (negative)")
              << "\n";
        parts.push_back(std::move(j));
        tables.push_back(table.str());
    }
    write_output(opts, dump_components(opts, std::move(parts), tables));
    return 0;
}

int run_spectrum(const CommonOptions& opts) {
    std::vector<ordered_json> parts;
    std::vector<std::string> tables;
    for (const auto& g : load_graphs(opts)) {
        curvlab::Spectrum spec = curvlab::spectrum(g);
        ordered_json j;
        j["eigenvalues"] = spec.eigenvalues;
        if (g.size() >= 2) j["lambda_1"] = spec.lambda1();
        std::ostringstream table;
        table << "eigenvalues of -Delta:\n";
        for (double v : spec.eigenvalues) table << "  " << v << "\n";
        parts.push_back(std::move(j));
        tables.push_back(table.str());
    }
    write_output(opts, dump_components(opts, std::move(parts), tables));
    return 0;
}

int run_cheeger(const CommonOptions& opts) {
    std::vector<ordered_json> parts;
    std::vector<std::string> tables;
    for (const auto& g : load_graphs(opts)) {
        curvlab::CheegerResult ch = curvlab::cheeger(g);
        ordered_json j;
        j["h"] = ch.h;
        std::vector<std::string> witness;
        for (int v : ch.witness) witness.push_back(g.name(v));
        j["witness"] = witness;
        j["boundary"] = ch.boundary;
        j["volume"] = ch.volume;
        std::ostringstream table;
        table << "h = " << ch.h << " boundary = " << ch.boundary << " volume = " << ch.volume
              << "\nwitness:";
        for (const auto& w : witness) table << " " << w;
        table << "\n";
        parts.push_back(std::move(j));
        tables.push_back(table.str());
    }
    write_output(opts, dump_components(opts, std::move(parts), tables));
    return 0;
}

int run_heat(const CommonOptions& opts, const std::string& t_list, const std::string& source,
             double tolerance) {
    std::vector<double> t_grid = parse_t_list(t_list);
    std::vector<ordered_json> parts;
    std::vector<std::string> tables;
    for (const auto& g : load_graphs(opts)) {
        int src = source.empty() ? 0 : g.index(source);
        curvlab::HeatOperator heat = curvlab::HeatOperator::from_graph(g, tolerance);
        std::vector<double> f(static_cast<std::size_t>(g.size()), 0.0);
        f[static_cast<std::size_t>(src)] = 1.0;
        ordered_json j;
        j["source"] = g.name(src);
        ordered_json per_t = ordered_json::array();
        std::ostringstream table;
        table << "heat of the indicator at " << g.name(src) << ":\n";
        for (double t : t_grid) {
            std::vector<double> v = heat.apply(f, t);
            ordered_json values;
            table << "t=" << t << ":";
            for (int x = 0; x < g.size(); ++x) {
                values[g.name(x)] = v[static_cast<std::size_t>(x)];
                table << " " << g.name(x) << "=" << v[static_cast<std::size_t>(x)];
            }
            table << "\n";
            per_t.push_back({{"t", t}, {"values", std::move(values)}});
        }
        j["heat"] = std::move(per_t);
        parts.push_back(std::move(j));
        tables.push_back(table.str());
    }
    write_output(opts, dump_components(opts, std::move(parts), tables));
    return 0;
}

int run_wasserstein(const CommonOptions& opts, const std::string& mu_path,
                    const std::string& nu_path, const std::string& mu_point,
                    const std::string& nu_point) {
    auto graphs = load_graphs(opts);
    if (graphs.size() != 1)
        throw curvlab::BadParams("wasserstein runs on a single connected graph");
    const curvlab::Graph& g = graphs[0];

    auto load_density = [&](const std::string& path,
                            const std::string& point) -> std::vector<double> {
        std::vector<double> density(static_cast<std::size_t>(g.size()), 0.0);
        if (!point.empty()) {
            int v = g.index(point);
            density[static_cast<std::size_t>(v)] = 1.0 / g.measure(v);
            return density;
        }
        std::ifstream in(path);
        if (!in) throw curvlab::ParseError("cannot open '" + path + "'");
        ordered_json doc;
        try {
            doc = ordered_json::parse(in);
            for (const auto& [name, val] : doc.items())
                density[static_cast<std::size_t>(g.index(name))] = val.get<double>();
        } catch (const nlohmann::json::exception& ex) {
            throw curvlab::ParseError("density '" + path + "': " + ex.what());
        }
        return density;
    };

    if (mu_path.empty() == mu_point.empty() || nu_path.empty() == nu_point.empty())
        throw curvlab::BadParams("give --mu or --mu-point, and --nu or --nu-point");
    double w1 = curvlab::wasserstein1(g, load_density(mu_path, mu_point),
                                      load_density(nu_path, nu_point));
    if (opts.format == "json") {
        ordered_json j;
        j["w1"] = w1;
        write_output(opts, j.dump(2) + "\n");
    } else {
        std::ostringstream table;
        table << "W1 = " << w1 << "\n";
        write_output(opts, table.str());
    }
    return 0;
}

int run_coupling(const CommonOptions& opts, const std::string& t_list, int samples,
                 std::uint64_t seed, const std::string& pair, bool force, double tolerance) {
    std::vector<ordered_json> parts;
    std::vector<std::string> tables;
    bool any_fail = false;
    for (const auto& g : load_graphs(opts)) {
        curvlab::CouplingGraph coupling = curvlab::build_perfect_coupling(g);
        curvlab::VerificationReport report;
        report.provenance["graph"] = curvlab::graph_to_json(g);
        report.provenance["command"] = "coupling";
        report.add(curvlab::coupling_marginal_check(coupling));
        if (!t_list.empty()) {
            curvlab::CouplingHeatOptions copts;
            copts.force = force;
            copts.slack_tol = tolerance > 0.0 ? tolerance : copts.slack_tol;
            report.add(curvlab::coupling_heat_bound(coupling, parse_t_list(t_list), copts));
        }
        if (samples > 0) {
            int x0 = 0, y0 = g.size() > 1 ? 1 : 0;
            if (!pair.empty()) {
                auto comma = pair.find(',');
                if (comma == std::string::npos)
                    throw curvlab::BadParams("--pair expects u,v vertex names");
                x0 = g.index(pair.substr(0, comma));
                y0 = g.index(pair.substr(comma + 1));
            }
            curvlab::HeatOperator heat = coupling.heat_operator();
            for (double t : t_list.empty() ? std::vector<double>{1.0} : parse_t_list(t_list)) {
                curvlab::McResult mc =
                    curvlab::simulate_coupled_walks(coupling, x0, y0, t, samples, seed);
                std::vector<double> exact = heat.apply(coupling.off_diagonal_indicator(), t);
                double truth = exact[static_cast<std::size_t>(coupling.state(x0, y0))];
                std::ostringstream note;
                note << "t=" << t << " pair=(" << g.name(x0) << "," << g.name(y0)
                     << ") p_hat=" << mc.p_hat;
                report.add(curvlab::make_entry(
                    "mc_consistency", "|p_hat - P~_t 1_W| <= 4 stderr", std::abs(mc.p_hat - truth),
                    4.0 * mc.std_error, 0.0, note.str()));
            }
        }
        any_fail = any_fail || !report.all_pass();
        parts.push_back(curvlab::report_to_json(report));
        tables.push_back(curvlab::render_table(report));
    }
    write_output(opts, dump_components(opts, std::move(parts), tables));
    return any_fail ? 1 : 0;
}

int run_verify(const CommonOptions& opts, const std::string& t_list, std::uint64_t seed,
               bool force, double tolerance, const std::string& checks) {
    curvlab::VerifyConfig cfg;
    if (!t_list.empty()) cfg.t_grid = parse_t_list(t_list);
    cfg.seed = seed;
    cfg.force = force;
    cfg.throw_on_uncertified = false;
    if (tolerance > 0.0) cfg.slack_tol = tolerance;
    if (!checks.empty()) {
        std::stringstream ss(checks);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.checks.insert(item);
    }
    std::vector<ordered_json> parts;
    std::vector<std::string> tables;
    bool any_fail = false;
    for (const auto& g : load_graphs(opts)) {
        curvlab::VerificationReport report = curvlab::verify_inequalities(g, cfg);
        any_fail = any_fail || !report.all_pass();
        parts.push_back(curvlab::report_to_json(report));
        tables.push_back(curvlab::render_table(report));
    }
    write_output(opts, dump_components(opts, std::move(parts), tables));
    return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ollivier curvature, couplings, heat semigroups and the inequalities "
                 "they certify on finite weighted reversible graphs"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string t_list;
    std::string pairs = "all";
    std::string source;
    std::string mu_path, nu_path, mu_point, nu_point, pair, checks;
    std::uint64_t seed = 1;
    int samples = 0;
    double tolerance = 0.0;
    bool force = false;

    CLI::App* gen = app.add_subcommand("gen", "generate a graph file");
    gen->add_option("--family", opts.family, "family name")->required();
    gen->add_option("--params", opts.params, "family parameters, e.g. n=6");
    add_output(gen, opts);

    CLI::App* curvature = app.add_subcommand("curvature", "Ollivier curvature per pair");
    add_graph_source(curvature, opts);
    curvature->add_option("--pairs", pairs, "edges or all")
        ->check(CLI::IsMember({"edges", "all"}));
    add_output(curvature, opts);

    CLI::App* coupling = app.add_subcommand("coupling", "build and check the perfect coupling");
    add_graph_source(coupling, opts);
    coupling->add_option("--t", t_list, "comma-separated times for the heat bound");
    coupling->add_option("--samples", samples, "Monte Carlo samples (0 = skip)");
    coupling->add_option("--seed", seed, "simulation seed");
    coupling->add_option("--pair", pair, "simulation start pair u,v");
    coupling->add_option("--tolerance", tolerance, "slack tolerance override");
    coupling->add_flag("--force", force, "run bounds without curvature certification");
    add_output(coupling, opts);

    CLI::App* heat = app.add_subcommand("heat", "heat semigroup of a vertex indicator");
    add_graph_source(heat, opts);
    heat->add_option("--t", t_list, "comma-separated times")->required();
    heat->add_option("--source", source, "source vertex (default: first)");
    heat->add_option("--tolerance", tolerance, "semigroup tolerance");
    add_output(heat, opts);

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of -Delta");
    add_graph_source(spectrum, opts);
    add_output(spectrum, opts);

    CLI::App* cheeger = app.add_subcommand("cheeger", "exact Cheeger constant (n <= 20)");
    add_graph_source(cheeger, opts);
    add_output(cheeger, opts);

    CLI::App* wasserstein = app.add_subcommand("wasserstein", "W1 between two densities");
    add_graph_source(wasserstein, opts);
    wasserstein->add_option("--mu", mu_path, "density JSON {vertex: value}");
    wasserstein->add_option("--nu", nu_path, "density JSON {vertex: value}");
    wasserstein->add_option("--mu-point", mu_point, "point mass at a vertex");
    wasserstein->add_option("--nu-point", nu_point, "point mass at a vertex");
    add_output(wasserstein, opts);

    CLI::App* verify = app.add_subcommand("verify", "run the inequality harness");
    add_graph_source(verify, opts);
    verify->add_option("--t", t_list, "comma-separated times");
    verify->add_option("--seed", seed, "seed for the random families");
    verify->add_option("--tolerance", tolerance, "slack tolerance override");
    verify->add_option("--checks", checks, "comma-separated check subset");
    verify->add_flag("--force", force, "run checks on uncertified graphs (informational)");
    add_output(verify, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return run_gen(opts);
        if (curvature->parsed()) return run_curvature(opts, pairs);
        if (coupling->parsed())
            return run_coupling(opts, t_list, samples, seed, pair, force, tolerance);
        if (heat->parsed())
            return run_heat(opts, t_list, source, tolerance > 0.0 ? tolerance : 1e-10);
        if (spectrum->parsed()) return run_spectrum(opts);
        if (cheeger->parsed()) return run_cheeger(opts);
        if (wasserstein->parsed())
            return run_wasserstein(opts, mu_path, nu_path, mu_point, nu_point);
        if (verify->parsed()) return run_verify(opts, t_list, seed, force, tolerance, checks);
    } catch (const curvlab::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const curvlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
