#pragma once

// JSON interchange and Graphviz export.
//
// Graph:  {"vertices":[{"id":"v0","weight":0}],
//          "edges":[{"id":"e0","ends":["v0","v1"]}],
//          "legs":[{"label":1,"vertex":"v0"}],
//          "lengths":{"e0":"3/2","e1":"inf"}}          (lengths optional)
// Curve:  {"components":[{"id":"C1","genus":0}],"nodes":[["C1","C2"]],"points":{"1":"C1"}}

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropmod/algebraic.hpp"
#include "tropmod/enumeration.hpp"
#include "tropmod/graph.hpp"
#include "tropmod/length.hpp"

namespace tropmod {

using json = nlohmann::ordered_json;

struct GraphDocument {
    WeightedGraph graph;
    std::vector<std::string> vertex_names;
    std::vector<std::string> edge_names;
    std::optional<std::vector<Length>> lengths;

    std::optional<EdgeId> edge_named(const std::string& name) const {
        const auto it = std::find(edge_names.begin(), edge_names.end(), name);
        if (it == edge_names.end()) return std::nullopt;
        return make_id<EdgeId>(static_cast<std::size_t>(it - edge_names.begin()));
    }
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::ParseError, field + ": " + what);
}

inline const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) parse_fail(path, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline std::string require_string(const json& j, const std::string& path) {
    if (!j.is_string()) parse_fail(path, "expected a string");
    return j.get<std::string>();
}

inline int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) parse_fail(path, "expected an integer");
    return j.get<int>();
}

inline Length length_from_json(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return Length::parse(j.get<std::string>());
        if (j.is_number_integer()) return Length(j.get<std::int64_t>());
        if (j.is_number_float()) {
            // exact decimal value of the literal as printed
            const auto text = j.dump();
            const auto dot = text.find('.');
            if (text.find_first_of("eE") != std::string::npos || dot == std::string::npos) {
                parse_fail(path, "use \"p/q\" for non-decimal lengths");
            }
            const auto digits = text.size() - dot - 1;
            if (digits > 15) parse_fail(path, "too many decimal digits");
            std::int64_t den = 1;
            for (std::size_t i = 0; i < digits; ++i) den *= 10;
            return Length(std::stoll(text.substr(0, dot) + text.substr(dot + 1)), den);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        parse_fail(path, e.what());
    }
    parse_fail(path, "expected a number, \"p/q\" or \"inf\"");
}

inline json length_to_json(const Length& l) {
    if (l.is_finite() && l.denominator() == 1) return l.numerator();
    return l.str();
}

} // namespace detail

inline GraphDocument parse_graph(const json& j) {
    if (!j.is_object()) detail::parse_fail("$", "expected an object");
    GraphDocument doc;
    std::map<std::string, int> vertex_index;
    GraphDescription raw;
    const auto& vertices = detail::require(j, "vertices", "$");
    if (!vertices.is_array()) detail::parse_fail("vertices", "expected an array");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto path = "vertices[" + std::to_string(i) + "]";
        const auto id = detail::require_string(detail::require(vertices[i], "id", path), path + ".id");
        const int weight =
            vertices[i].contains("weight") ? detail::require_int(vertices[i]["weight"], path + ".weight") : 0;
        if (!vertex_index.emplace(id, static_cast<int>(i)).second) detail::parse_fail(path + ".id", "duplicate id " + id);
        doc.vertex_names.push_back(id);
        raw.weights.push_back(weight);
    }
    auto vertex_ref = [&](const json& v, const std::string& path) {
        const auto name = detail::require_string(v, path);
        const auto it = vertex_index.find(name);
        if (it == vertex_index.end()) throw Error(ErrorCode::DanglingEndpoint, path + ": unknown vertex " + name);
        return it->second;
    };
    if (j.contains("edges")) {
        const auto& edges = j.at("edges");
        if (!edges.is_array()) detail::parse_fail("edges", "expected an array");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto path = "edges[" + std::to_string(i) + "]";
            const auto id = edges[i].contains("id") ? detail::require_string(edges[i]["id"], path + ".id")
                                                    : "e" + std::to_string(i);
            if (std::find(doc.edge_names.begin(), doc.edge_names.end(), id) != doc.edge_names.end()) {
                detail::parse_fail(path + ".id", "duplicate id " + id);
            }
            const auto& ends = detail::require(edges[i], "ends", path);
            if (!ends.is_array() || ends.size() != 2) detail::parse_fail(path + ".ends", "expected two vertex ids");
            raw.edges.emplace_back(vertex_ref(ends[0], path + ".ends[0]"), vertex_ref(ends[1], path + ".ends[1]"));
            doc.edge_names.push_back(id);
        }
    }
    if (j.contains("legs")) {
        const auto& legs = j.at("legs");
        if (!legs.is_array()) detail::parse_fail("legs", "expected an array");
        for (std::size_t i = 0; i < legs.size(); ++i) {
            const auto path = "legs[" + std::to_string(i) + "]";
            const int label = detail::require_int(detail::require(legs[i], "label", path), path + ".label");
            raw.legs.emplace_back(label, vertex_ref(detail::require(legs[i], "vertex", path), path + ".vertex"));
        }
    }
    doc.graph = validate(raw);
    if (j.contains("lengths")) {
        const auto& lengths = j.at("lengths");
        if (!lengths.is_object()) detail::parse_fail("lengths", "expected an object keyed by edge id");
        std::vector<std::optional<Length>> slots(doc.edge_names.size());
        for (const auto& [name, value] : lengths.items()) {
            const auto e = doc.edge_named(name);
            if (!e) detail::parse_fail("lengths." + name, "unknown edge");
            slots[idx(*e)] = detail::length_from_json(value, "lengths." + name);
        }
        std::vector<Length> out;
        for (std::size_t e = 0; e < slots.size(); ++e) {
            if (!slots[e]) detail::parse_fail("lengths", "no length for edge " + doc.edge_names[e]);
            out.push_back(*slots[e]);
        }
        doc.lengths = std::move(out);
    }
    return doc;
}

inline GraphDocument parse_graph(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return parse_graph(j);
}

inline GraphDocument parse_graph(const char* text) { return parse_graph(std::string(text)); }

inline std::string vertex_name(std::size_t v) { return "v" + std::to_string(v); }
inline std::string edge_name(std::size_t e) { return "e" + std::to_string(e); }

/// Default names are v<i> / e<i>.
inline json graph_to_json(const WeightedGraph& g, const std::vector<Length>* lengths = nullptr,
                          const std::vector<std::string>* vertex_names = nullptr,
                          const std::vector<std::string>* edge_names = nullptr) {
    auto vname = [&](VertexId v) { return vertex_names ? (*vertex_names)[idx(v)] : vertex_name(idx(v)); };
    auto ename = [&](std::size_t e) { return edge_names ? (*edge_names)[e] : edge_name(e); };
    json j;
    j["vertices"] = json::array();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        j["vertices"].push_back({{"id", vname(make_id<VertexId>(v))}, {"weight", g.weight(make_id<VertexId>(v))}});
    }
    j["edges"] = json::array();
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = g.ends(make_id<EdgeId>(e));
        j["edges"].push_back({{"id", ename(e)}, {"ends", {vname(a), vname(b)}}});
    }
    j["legs"] = json::array();
    for (std::size_t i = 0; i < g.num_legs(); ++i) {
        j["legs"].push_back({{"label", g.leg_label_at(i)}, {"vertex", vname(g.leg_vertex_at(i))}});
    }
    if (lengths != nullptr) {
        j["lengths"] = json::object();
        for (std::size_t e = 0; e < g.num_edges(); ++e) j["lengths"][ename(e)] = detail::length_to_json((*lengths)[e]);
    }
    return j;
}

inline NodalCurveDesc parse_curve(const json& j) {
    NodalCurveDesc x;
    std::map<std::string, int> index;
    const auto& comps = detail::require(j, "components", "$");
    if (!comps.is_array()) detail::parse_fail("components", "expected an array");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto path = "components[" + std::to_string(i) + "]";
        const auto id = detail::require_string(detail::require(comps[i], "id", path), path + ".id");
        const int genus = comps[i].contains("genus") ? detail::require_int(comps[i]["genus"], path + ".genus") : 0;
        if (!index.emplace(id, static_cast<int>(i)).second) detail::parse_fail(path + ".id", "duplicate id " + id);
        x.components.push_back({id, genus});
    }
    auto comp_ref = [&](const json& c, const std::string& path, ErrorCode code) {
        const auto name = detail::require_string(c, path);
        const auto it = index.find(name);
        if (it == index.end()) throw Error(code, path + ": unknown component " + name);
        return it->second;
    };
    if (j.contains("nodes")) {
        const auto& nodes = j.at("nodes");
        if (!nodes.is_array()) detail::parse_fail("nodes", "expected an array");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto path = "nodes[" + std::to_string(i) + "]";
            if (!nodes[i].is_array() || nodes[i].size() != 2) detail::parse_fail(path, "expected two component ids");
            x.nodes.emplace_back(comp_ref(nodes[i][0], path + "[0]", ErrorCode::DanglingEndpoint),
                                 comp_ref(nodes[i][1], path + "[1]", ErrorCode::DanglingEndpoint));
        }
    }
    if (j.contains("points")) {
        const auto& points = j.at("points");
        if (!points.is_object()) detail::parse_fail("points", "expected an object keyed by label");
        const auto n = points.size();
        x.points.assign(n, -1);
        for (const auto& [label_text, comp] : points.items()) {
            int label = 0;
            try {
                std::size_t used = 0;
                label = std::stoi(label_text, &used);
                if (used != label_text.size()) label = 0;
            } catch (const std::exception&) {
                label = 0;
            }
            if (label < 1 || static_cast<std::size_t>(label) > n) {
                throw Error(ErrorCode::BadMarking, "points." + label_text + ": labels must be 1.." + std::to_string(n));
            }
            x.points[static_cast<std::size_t>(label - 1)] = comp_ref(comp, "points." + label_text, ErrorCode::BadMarking);
        }
    }
    check_curve_desc(x);
    return x;
}

inline json curve_to_json(const NodalCurveDesc& x) {
    json j;
    j["components"] = json::array();
    for (const auto& c : x.components) j["components"].push_back({{"id", c.name}, {"genus", c.genus}});
    j["nodes"] = json::array();
    for (const auto& [a, b] : x.nodes) {
        j["nodes"].push_back({x.components[static_cast<std::size_t>(a)].name,
                              x.components[static_cast<std::size_t>(b)].name});
    }
    j["points"] = json::object();
    for (std::size_t i = 0; i < x.points.size(); ++i) {
        j["points"][std::to_string(i + 1)] = x.components[static_cast<std::size_t>(x.points[i])].name;
    }
    return j;
}

inline std::string hex(const std::string& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (const unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xF]);
    }
    return out;
}

inline json poset_to_json(const StrataPoset& p) {
    json j;
    j["g"] = p.g;
    j["n"] = p.n;
    j["f_vector"] = f_vector(p);
    j["nodes"] = json::array();
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        j["nodes"].push_back({{"index", i},
                              {"edges", p.nodes[i].num_edges},
                              {"key", hex(p.nodes[i].form.key)},
                              {"graph", graph_to_json(p.nodes[i].graph())}});
    }
    j["covers"] = json::array();
    for (const auto& c : p.covers) {
        j["covers"].push_back({{"from", c.from}, {"to", c.to}, {"multiplicity", c.multiplicity}, {"loop", c.loop}});
    }
    return j;
}

/// Weight profile "w=(2,0,0)", weights sorted descending.
inline std::string weight_profile(const WeightedGraph& g) {
    std::vector<int> w(g.weights().begin(), g.weights().end());
    std::sort(w.rbegin(), w.rend());
    std::string out = "w=(";
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
    return out + ")";
}

/// Vertices drawn as circles labeled w=k, legs as plain numbered points.
inline std::string graph_to_dot(const WeightedGraph& g, const std::string& name = "G") {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    os << "  node [shape=circle];\n";
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        os << "  v" << v << " [label=\"w=" << g.weight(make_id<VertexId>(v)) << "\"];\n";
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = g.ends(make_id<EdgeId>(e));
        os << "  v" << idx(a) << " -- v" << idx(b) << ";\n";
    }
    for (std::size_t i = 0; i < g.num_legs(); ++i) {
        os << "  leg" << g.leg_label_at(i) << " [shape=plaintext,label=\"" << g.leg_label_at(i) << "\"];\n";
        os << "  v" << idx(g.leg_vertex_at(i)) << " -- leg" << g.leg_label_at(i) << ";\n";
    }
    os << "}\n";
    return os.str();
}

/// Hasse diagram of the contraction poset, larger types on top.
inline std::string poset_to_dot(const StrataPoset& p) {
    std::ostringstream os;
    os << "digraph strata_g" << p.g << "_n" << p.n << " {\n";
    os << "  rankdir=TB;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        os << "  n" << i << " [label=\"|E|=" << p.nodes[i].num_edges << ", " << weight_profile(p.nodes[i].graph())
           << "\"];\n";
    }
    for (const auto& c : p.covers) {
        os << "  n" << c.from << " -> n" << c.to;
        if (c.multiplicity > 1) os << " [label=\"x" << c.multiplicity << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace tropmod
