#pragma once

// Pointed nodal curves through their combinatorial shadow: irreducible
// components with geometric genera, nodes joining (possibly equal) components,
// and marked points placed on components.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tropmod/graph.hpp"

namespace tropmod {

struct NodalCurveDesc {
    struct Component {
        std::string name;
        int genus = 0;
    };
    std::vector<Component> components;
    std::vector<std::pair<int, int>> nodes; // component indices; equal pair = self-node
    std::vector<int> points;                // points[i] = component carrying marked point i+1
};

inline void check_curve_desc(const NodalCurveDesc& x) {
    const auto nc = static_cast<int>(x.components.size());
    for (const auto& c : x.components) {
        if (c.genus < 0) throw Error(ErrorCode::NegativeWeight, "component " + c.name + " has negative genus");
    }
    for (const auto& [a, b] : x.nodes) {
        if (a < 0 || a >= nc || b < 0 || b >= nc) throw Error(ErrorCode::DanglingEndpoint, "node on a missing component");
    }
    for (std::size_t i = 0; i < x.points.size(); ++i) {
        if (x.points[i] < 0 || x.points[i] >= nc) {
            throw Error(ErrorCode::BadMarking, "marked point " + std::to_string(i + 1) + " lies on no component");
        }
    }
}

/// Vertex per component weighted by its geometric genus, edge per node, leg per
/// marked point.
inline WeightedGraph dual_graph(const NodalCurveDesc& x) {
    check_curve_desc(x);
    GraphDescription raw;
    for (const auto& c : x.components) raw.weights.push_back(c.genus);
    raw.edges = x.nodes;
    for (std::size_t i = 0; i < x.points.size(); ++i) raw.legs.emplace_back(static_cast<int>(i + 1), x.points[i]);
    return validate(raw);
}

/// The curve whose dual graph is g.
inline NodalCurveDesc curve_from_graph(const WeightedGraph& g) {
    NodalCurveDesc x;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        x.components.push_back({"C" + std::to_string(v), g.weight(make_id<VertexId>(v))});
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = g.ends(make_id<EdgeId>(e));
        x.nodes.emplace_back(static_cast<int>(idx(a)), static_cast<int>(idx(b)));
    }
    x.points.assign(g.num_legs(), 0);
    for (std::size_t i = 0; i < g.num_legs(); ++i) {
        x.points[static_cast<std::size_t>(g.leg_label_at(i) - 1)] = static_cast<int>(idx(g.leg_vertex_at(i)));
    }
    return x;
}

/// Stable iff the twisted dualizing sheaf has positive degree on every
/// component; the degree on a component is the stability degree of its vertex.
inline StabilityReport is_stable_curve(const NodalCurveDesc& x) { return check_stable(dual_graph(x)); }

/// Degree of the twisted dualizing sheaf on each component.
inline std::vector<int> component_degrees(const NodalCurveDesc& x) {
    const auto g = dual_graph(x);
    std::vector<int> out;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) out.push_back(stability_degree(g, make_id<VertexId>(v)));
    return out;
}

/// Dual graph of the stable model. Removes unpointed rational tails, then
/// contracts exceptional components to nodes, then removes uni-pointed
/// rational tails (the marked point moves to the attaching component),
/// repeating until stable. An RNG, when given, picks the next rewrite
/// uniformly among every applicable one instead.
inline WeightedGraph stabilize_curve(const NodalCurveDesc& curve, std::mt19937_64* rng = nullptr) {
    auto x = curve;
    {
        const auto g = dual_graph(x);
        require_hyperbolic(g.genus(), static_cast<int>(g.num_legs()));
    }
    std::vector<bool> gone(x.components.size(), false);
    std::vector<bool> node_gone(x.nodes.size(), false);

    enum Kind { UnpointedTail = 0, Exceptional = 1, UnipointedTail = 2 };
    while (true) {
        std::vector<std::vector<std::size_t>> branches(x.components.size()); // node index per branch
        std::vector<std::vector<std::size_t>> marks(x.components.size());
        for (std::size_t k = 0; k < x.nodes.size(); ++k) {
            if (node_gone[k]) continue;
            branches[static_cast<std::size_t>(x.nodes[k].first)].push_back(k);
            branches[static_cast<std::size_t>(x.nodes[k].second)].push_back(k);
        }
        for (std::size_t i = 0; i < x.points.size(); ++i) marks[static_cast<std::size_t>(x.points[i])].push_back(i);

        std::vector<std::pair<int, std::size_t>> moves;
        for (std::size_t c = 0; c < x.components.size(); ++c) {
            if (gone[c] || x.components[c].genus != 0) continue;
            const auto nb = branches[c].size();
            const auto nm = marks[c].size();
            if (nb == 1 && nm == 0) moves.emplace_back(UnpointedTail, c);
            if (nb == 2 && nm == 0 && branches[c][0] != branches[c][1]) moves.emplace_back(Exceptional, c);
            if (nb == 1 && nm == 1) moves.emplace_back(UnipointedTail, c);
        }
        if (moves.empty()) break;
        std::pair<int, std::size_t> move;
        if (rng != nullptr) {
            std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
            move = moves[pick(*rng)];
        } else {
            move = *std::min_element(moves.begin(), moves.end());
        }
        const auto c = move.second;
        const int ci = static_cast<int>(c);
        auto far_side = [&](std::size_t k) { return x.nodes[k].first == ci ? x.nodes[k].second : x.nodes[k].first; };
        switch (move.first) {
        case UnpointedTail:
            node_gone[branches[c][0]] = true;
            break;
        case Exceptional: {
            // the two nodes on E fuse into one node between the far components
            const auto k0 = branches[c][0];
            const auto k1 = branches[c][1];
            x.nodes[k0] = {far_side(k0), far_side(k1)};
            node_gone[k1] = true;
            break;
        }
        case UnipointedTail:
            x.points[marks[c][0]] = far_side(branches[c][0]);
            node_gone[branches[c][0]] = true;
            break;
        }
        gone[c] = true;
    }

    std::vector<int> renumber(x.components.size(), -1);
    GraphDescription raw;
    for (std::size_t c = 0; c < x.components.size(); ++c) {
        if (gone[c]) continue;
        renumber[c] = static_cast<int>(raw.weights.size());
        raw.weights.push_back(x.components[c].genus);
    }
    for (std::size_t k = 0; k < x.nodes.size(); ++k) {
        if (node_gone[k]) continue;
        raw.edges.emplace_back(renumber[static_cast<std::size_t>(x.nodes[k].first)],
                               renumber[static_cast<std::size_t>(x.nodes[k].second)]);
    }
    for (std::size_t i = 0; i < x.points.size(); ++i) {
        raw.legs.emplace_back(static_cast<int>(i + 1), renumber[static_cast<std::size_t>(x.points[i])]);
    }
    return validate(raw);
}

struct StratumDims {
    int dim_alg = 0;    // dimension of the algebraic stratum
    int codim_trop = 0; // codimension of the tropical stratum, equal to dim_alg
    int dim_trop = 0;   // dimension of the tropical stratum, |E|
};

inline StratumDims stratum_dims(const WeightedGraph& g) {
    if (!is_stable(g)) throw Error(ErrorCode::NotStable, "stratum dimensions need a stable graph");
    const int top = 3 * g.genus() - 3 + static_cast<int>(g.num_legs());
    const int ne = static_cast<int>(g.num_edges());
    return {top - ne, top - ne, ne};
}

} // namespace tropmod
