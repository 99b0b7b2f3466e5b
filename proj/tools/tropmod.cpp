// tropmod: command-line front end for stable weighted graphs and tropical curves.
//
// Exit status: 0 on success, 1 on a negative verdict, 2 on bad input.

#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tropmod/tropmod.hpp"

namespace {

using tropmod::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tropmod::Error(tropmod::ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw tropmod::Error(tropmod::ErrorCode::ParseError, path + ": " + e.what());
    }
}

tropmod::GraphDocument read_graph(const std::string& path) {
    try {
        return tropmod::parse_graph(read_json(path));
    } catch (const tropmod::Error& e) {
        throw tropmod::Error(e.code(), path + ": " + e.what());
    }
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
    std::string name = base;
    for (int k = 0; used.contains(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    return name;
}

/// Cycle notation, fixed points omitted; "()" for the identity.
template <class Name>
std::string cycles(const std::vector<std::size_t>& image, Name&& name) {
    std::string out;
    std::vector<bool> seen(image.size(), false);
    for (std::size_t start = 0; start < image.size(); ++start) {
        if (seen[start] || image[start] == start) continue;
        out += "(";
        for (std::size_t x = start; !seen[x]; x = image[x]) {
            if (x != start) out += " ";
            out += name(x);
            seen[x] = true;
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

json stability_json(const tropmod::StabilityReport& report, const std::vector<std::string>& vertex_names) {
    json offending = json::array();
    for (const auto& o : report.offending) {
        offending.push_back({{"vertex", vertex_names[tropmod::idx(o.vertex)]},
                             {"weight", o.weight},
                             {"valence", o.valence},
                             {"degree", o.degree}});
    }
    return {{"stable", report.stable}, {"offending", offending}};
}

int cmd_validate(const std::string& path, const std::string& format) {
    const auto doc = read_graph(path);
    const auto& g = doc.graph;
    if (format == "dot") {
        std::cout << tropmod::graph_to_dot(g);
        return kOk;
    }
    json out;
    out["valid"] = true;
    out["vertices"] = g.num_vertices();
    out["edges"] = g.num_edges();
    out["legs"] = g.num_legs();
    out["first_betti"] = tropmod::first_betti(g);
    out["genus"] = tropmod::genus(g);
    out["stability"] = stability_json(tropmod::check_stable(g), doc.vertex_names);
    out["key"] = tropmod::hex(tropmod::canonical_key(g));
    print(out);
    return kOk;
}

int cmd_iso(const std::string& a, const std::string& b) {
    const bool iso = tropmod::is_isomorphic(read_graph(a).graph, read_graph(b).graph);
    std::cout << (iso ? "isomorphic" : "not isomorphic") << "\n";
    return iso ? kOk : kNegative;
}

int cmd_aut(const std::string& path) {
    const auto doc = read_graph(path);
    const auto& g = doc.graph;
    const auto aut = tropmod::automorphism_group(g);
    const std::size_t nv = g.num_vertices();
    auto point_name = [&](std::size_t x) -> std::string {
        if (x < nv) return doc.vertex_names[x];
        const auto h = tropmod::make_id<tropmod::HalfEdgeId>(x - nv);
        if (g.is_leg(h)) return "leg" + std::to_string(*g.leg_label(h));
        return doc.edge_names[tropmod::idx(g.edge_of(h))] + "." + std::to_string(tropmod::idx(h) % 2);
    };
    json gens = json::array();
    for (const auto& p : aut.generators) {
        std::vector<std::size_t> image;
        for (const auto v : p.vertices) image.push_back(tropmod::idx(v));
        for (const auto h : p.half_edges) image.push_back(nv + tropmod::idx(h));
        gens.push_back(cycles(image, point_name));
    }
    json edge_gens = json::array();
    for (const auto& p : aut.edge_action_generators) {
        std::vector<std::size_t> image;
        for (const auto e : p) image.push_back(tropmod::idx(e));
        edge_gens.push_back(cycles(image, [&](std::size_t e) { return doc.edge_names[e]; }));
    }
    print({{"order", aut.order},
           {"edge_action_order", aut.edge_action_order},
           {"generators", gens},
           {"edge_action_generators", edge_gens}});
    return kOk;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int cmd_contract(const std::string& path, const std::string& edges) {
    const auto doc = read_graph(path);
    std::set<tropmod::EdgeId> s;
    for (const auto& name : split_csv(edges)) {
        const auto e = doc.edge_named(name);
        if (!e) throw tropmod::Error(tropmod::ErrorCode::UnknownEdge, name);
        s.insert(*e);
    }
    const auto res = tropmod::contract(doc.graph, s);
    std::vector<std::string> vnames(res.graph.num_vertices());
    for (std::size_t v = doc.graph.num_vertices(); v-- > 0;) vnames[tropmod::idx(res.vertex_map[v])] = doc.vertex_names[v];
    std::vector<std::string> enames;
    for (const auto e : res.edge_embedding) enames.push_back(doc.edge_names[tropmod::idx(e)]);
    std::vector<tropmod::Length> lengths;
    if (doc.lengths) {
        for (const auto e : res.edge_embedding) lengths.push_back((*doc.lengths)[tropmod::idx(e)]);
    }
    json vmap = json::object();
    for (std::size_t v = 0; v < doc.graph.num_vertices(); ++v) {
        vmap[doc.vertex_names[v]] = vnames[tropmod::idx(res.vertex_map[v])];
    }
    print({{"graph", tropmod::graph_to_json(res.graph, doc.lengths ? &lengths : nullptr, &vnames, &enames)},
           {"vertex_map", vmap},
           {"edge_embedding", enames}});
    return kOk;
}

int cmd_resolve(const std::string& path) {
    const auto doc = read_graph(path);
    const auto res = tropmod::resolve_to_trivalent(doc.graph);
    std::set<std::string> used(doc.vertex_names.begin(), doc.vertex_names.end());
    used.insert(doc.edge_names.begin(), doc.edge_names.end());
    auto vnames = doc.vertex_names;
    for (std::size_t v = vnames.size(); v < res.graph.num_vertices(); ++v) vnames.push_back(fresh_name("r" + std::to_string(v), used));
    auto enames = doc.edge_names;
    for (std::size_t e = enames.size(); e < res.graph.num_edges(); ++e) enames.push_back(fresh_name("f" + std::to_string(e), used));
    json contracted = json::array();
    for (const auto e : res.contracted) contracted.push_back(enames[tropmod::idx(e)]);
    print({{"graph", tropmod::graph_to_json(res.graph, nullptr, &vnames, &enames)}, {"contracted", contracted}});
    return kOk;
}

tropmod::TropicalCurve read_curve(const std::string& path, bool extended) {
    const auto doc = read_graph(path);
    auto curve = doc.lengths ? tropmod::TropicalCurve{doc.graph, *doc.lengths, extended}
                             : tropmod::curve_with_uniform_lengths(doc.graph);
    curve.extended = extended;
    tropmod::check_curve(curve);
    return curve;
}

int cmd_stabilize(const std::string& path, bool extended, std::optional<std::uint64_t> seed) {
    const auto curve = read_curve(path, extended);
    std::mt19937_64 rng(seed.value_or(0));
    const auto stable = tropmod::stabilize(curve, seed ? &rng : nullptr);
    const auto canon = tropmod::canonical_curve(stable);
    print(tropmod::graph_to_json(canon.graph, &canon.lengths));
    return kOk;
}

int cmd_fiber(const std::string& path) {
    const auto doc = read_graph(path);
    if (!doc.lengths) throw tropmod::Error(tropmod::ErrorCode::ParseError, path + ": fiber needs \"lengths\"");
    const tropmod::ConePoint p{doc.graph, *doc.lengths};
    const auto points = tropmod::fiber(p, tropmod::default_workers());
    json out = json::array();
    for (const auto& q : points) {
        json coords = json::object();
        for (std::size_t e = 0; e < q.coords.size(); ++e) coords[doc.edge_names[e]] = tropmod::detail::length_to_json(q.coords[e]);
        out.push_back(coords);
    }
    print({{"count", points.size()}, {"points", out}});
    return kOk;
}

struct EnumerateOptions {
    int g = 0;
    int n = 0;
    std::string format = "json";
    bool fvector = false;
    bool shapes = false;
    bool check_codim1 = false;
    std::vector<std::string> ht_path;
};

std::string compact(const std::vector<std::size_t>& v) { return json(v).dump(); }

int cmd_enumerate(const EnumerateOptions& opt) {
    const auto poset = tropmod::enumerate_all(opt.g, opt.n, tropmod::default_workers());
    const bool report_only = opt.fvector || opt.shapes || opt.check_codim1 || !opt.ht_path.empty();
    int status = kOk;
    if (opt.fvector) std::cout << compact(tropmod::f_vector(poset)) << "\n";
    if (opt.shapes) std::cout << compact(tropmod::shape_f_vector(poset)) << "\n";
    if (opt.check_codim1) {
        const bool connected = tropmod::codim1_connected(poset);
        std::cout << "codim1_connected: " << (connected ? "true" : "false") << "\n";
        if (!connected) status = kNegative;
    }
    if (!opt.ht_path.empty()) {
        const auto a = read_graph(opt.ht_path[0]);
        const auto b = read_graph(opt.ht_path[1]);
        const auto path = tropmod::ht_path(a.graph, b.graph, poset);
        json steps = json::array();
        for (const auto& step : path) {
            steps.push_back({{"direction", step.direction == tropmod::Direction::Down ? "down" : "up"},
                             {"edge", tropmod::edge_name(tropmod::idx(step.edge))},
                             {"graph", tropmod::graph_to_json(step.graph)}});
        }
        print({{"length", path.size() / 2}, {"steps", steps}});
    }
    if (report_only) return status;
    if (opt.format == "dot") {
        std::cout << tropmod::poset_to_dot(poset);
    } else if (opt.format == "text") {
        std::cout << "g=" << poset.g << " n=" << poset.n << " f_vector=" << compact(tropmod::f_vector(poset)) << "\n";
        for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
            std::cout << i << " |E|=" << poset.nodes[i].num_edges << " "
                      << tropmod::weight_profile(poset.nodes[i].graph()) << "\n";
        }
        for (const auto& c : poset.covers) {
            std::cout << c.from << " -> " << c.to << " x" << c.multiplicity << (c.loop ? " loop" : "") << "\n";
        }
    } else {
        print(tropmod::poset_to_json(poset));
    }
    return status;
}

int cmd_dual(const std::string& path, bool stabilize) {
    tropmod::NodalCurveDesc x;
    try {
        x = tropmod::parse_curve(read_json(path));
    } catch (const tropmod::Error& e) {
        throw tropmod::Error(e.code(), path + ": " + e.what());
    }
    std::vector<std::string> names;
    for (const auto& c : x.components) names.push_back(c.name);
    if (stabilize) {
        print({{"graph", tropmod::graph_to_json(tropmod::stabilize_curve(x))}});
        return kOk;
    }
    const auto g = tropmod::dual_graph(x);
    json degrees = json::object();
    const auto deg = tropmod::component_degrees(x);
    for (std::size_t c = 0; c < names.size(); ++c) degrees[names[c]] = deg[c];
    print({{"graph", tropmod::graph_to_json(g, nullptr, &names)},
           {"genus", g.genus()},
           {"degrees", degrees},
           {"stability", stability_json(tropmod::check_stable(g), names)}});
    return kOk;
}

int cmd_dims(const std::string& path) {
    const auto doc = read_graph(path);
    const auto d = tropmod::stratum_dims(doc.graph);
    print({{"g", doc.graph.genus()},
           {"n", doc.graph.num_legs()},
           {"dim_alg", d.dim_alg},
           {"codim_trop", d.codim_trop},
           {"dim_trop", d.dim_trop}});
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable weighted graphs, tropical curves and the strata of their moduli"};
    app.require_subcommand(1);

    std::string file_a, file_b, format = "json", edges;
    bool extended = false, stabilize_flag = false;
    std::optional<std::uint64_t> seed;
    EnumerateOptions enum_opt;

    auto* validate_cmd = app.add_subcommand("validate", "check a graph and report genus and stability");
    validate_cmd->add_option("graph", file_a, "graph JSON")->required();
    validate_cmd->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    auto* iso_cmd = app.add_subcommand("iso", "exit 0 iff the two graphs are isomorphic");
    iso_cmd->add_option("a", file_a, "graph JSON")->required();
    iso_cmd->add_option("b", file_b, "graph JSON")->required();

    auto* aut_cmd = app.add_subcommand("aut", "automorphism group and its action on edges");
    aut_cmd->add_option("graph", file_a, "graph JSON")->required();

    auto* contract_cmd = app.add_subcommand("contract", "weighted contraction of an edge set");
    contract_cmd->add_option("graph", file_a, "graph JSON")->required();
    contract_cmd->add_option("--edges", edges, "comma-separated edge ids");

    auto* resolve_cmd = app.add_subcommand("resolve", "3-regular weight-0 graph contracting onto the input");
    resolve_cmd->add_option("graph", file_a, "graph JSON")->required();

    auto* stabilize_cmd = app.add_subcommand("stabilize", "stable representative of a tropical curve");
    stabilize_cmd->add_option("curve", file_a, "graph JSON with lengths")->required();
    stabilize_cmd->add_flag("--extended", extended, "allow infinite lengths on any edge");
    stabilize_cmd->add_option("--seed", seed, "randomize the rewrite order with this seed");

    auto* fiber_cmd = app.add_subcommand("fiber", "cone points parametrizing the same curve");
    fiber_cmd->add_option("point", file_a, "graph JSON with nonnegative lengths")->required();

    auto* enumerate_cmd = app.add_subcommand("enumerate", "all stable types of signature (g,n)");
    enumerate_cmd->add_option("-g", enum_opt.g, "genus")->required()->check(CLI::NonNegativeNumber);
    enumerate_cmd->add_option("-n", enum_opt.n, "number of legs")->required()->check(CLI::NonNegativeNumber);
    enumerate_cmd->add_option("--format", enum_opt.format, "json, dot or text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    enumerate_cmd->add_flag("--fvector", enum_opt.fvector, "print type counts by number of edges");
    enumerate_cmd->add_flag("--shapes", enum_opt.shapes, "print counts with leg labels forgotten");
    enumerate_cmd->add_flag("--check-codim1", enum_opt.check_codim1, "connectivity through codimension one");
    enumerate_cmd->add_option("--ht-path", enum_opt.ht_path, "zig-zag between two trivalent graphs")
        ->expected(2);

    auto* dual_cmd = app.add_subcommand("dual", "dual graph of a pointed nodal curve");
    dual_cmd->add_option("curve", file_a, "curve JSON")->required();
    dual_cmd->add_flag("--stabilize", stabilize_flag, "dual graph of the stable model instead");

    auto* dims_cmd = app.add_subcommand("dims", "algebraic and tropical stratum dimensions");
    dims_cmd->add_option("graph", file_a, "graph JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*validate_cmd) return cmd_validate(file_a, format);
        if (*iso_cmd) return cmd_iso(file_a, file_b);
        if (*aut_cmd) return cmd_aut(file_a);
        if (*contract_cmd) return cmd_contract(file_a, edges);
        if (*resolve_cmd) return cmd_resolve(file_a);
        if (*stabilize_cmd) return cmd_stabilize(file_a, extended, seed);
        if (*fiber_cmd) return cmd_fiber(file_a);
        if (*enumerate_cmd) return cmd_enumerate(enum_opt);
        if (*dual_cmd) return cmd_dual(file_a, stabilize_flag);
        if (*dims_cmd) return cmd_dims(file_a);
    } catch (const tropmod::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
