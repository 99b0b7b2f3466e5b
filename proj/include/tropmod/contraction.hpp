#pragma once

// Weighted contraction of edge sets and the derived order on weighted graphs.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropmod/canonical.hpp"
#include "tropmod/graph.hpp"

namespace tropmod {

struct ContractionResult {
    WeightedGraph graph;
    std::vector<VertexId> vertex_map;    // V(G) -> V(G/S)
    std::vector<EdgeId> edge_embedding;  // E(G/S) -> E(G)
    std::vector<HalfEdgeId> leg_map;     // leg half-edges of G (by leg index) -> leg half-edges of G/S
};

/// Collapses every connected component of (V, S) to one vertex whose weight is
/// the component's b1 plus its total weight. Surviving edges and legs keep
/// their relative order; the new vertex inherits the smallest id of its fiber.
inline ContractionResult contract(const WeightedGraph& g, const std::set<EdgeId>& s) {
    for (const auto e : s) {
        if (!g.has_edge(e)) throw Error(ErrorCode::UnknownEdge, "edge " + std::to_string(idx(e)));
    }
    const std::size_t nv = g.num_vertices();
    UnionFind uf(nv);
    for (const auto e : s) {
        const auto [a, b] = g.ends(e);
        uf.unite(idx(a), idx(b));
    }

    ContractionResult out;
    out.vertex_map.resize(nv);
    std::vector<int> root_to_new(nv, -1);
    std::vector<int> fiber_vertices;
    std::vector<int> fiber_edges;
    std::vector<int> fiber_weight;
    for (std::size_t v = 0; v < nv; ++v) {
        const auto r = uf.find(v);
        if (root_to_new[r] < 0) {
            root_to_new[r] = static_cast<int>(fiber_vertices.size());
            fiber_vertices.push_back(0);
            fiber_edges.push_back(0);
            fiber_weight.push_back(0);
        }
        const auto nvid = static_cast<std::size_t>(root_to_new[r]);
        out.vertex_map[v] = make_id<VertexId>(nvid);
        ++fiber_vertices[nvid];
        fiber_weight[nvid] += g.weight(make_id<VertexId>(v));
    }
    for (const auto e : s) ++fiber_edges[idx(out.vertex_map[idx(g.ends(e).first)])];

    GraphDescription raw;
    for (std::size_t i = 0; i < fiber_vertices.size(); ++i) {
        // each fiber is connected, so b1 = |S_i| - |V_i| + 1
        raw.weights.push_back(fiber_weight[i] + fiber_edges[i] - fiber_vertices[i] + 1);
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto id = make_id<EdgeId>(e);
        if (s.contains(id)) continue;
        const auto [a, b] = g.ends(id);
        raw.edges.emplace_back(static_cast<int>(idx(out.vertex_map[idx(a)])),
                               static_cast<int>(idx(out.vertex_map[idx(b)])));
        out.edge_embedding.push_back(id);
    }
    for (std::size_t i = 0; i < g.num_legs(); ++i) {
        raw.legs.emplace_back(g.leg_label_at(i), static_cast<int>(idx(out.vertex_map[idx(g.leg_vertex_at(i))])));
    }
    out.graph = validate(raw, g.is_connected() ? Connectivity::Required : Connectivity::Allowed);
    for (std::size_t i = 0; i < g.num_legs(); ++i) out.leg_map.push_back(out.graph.leg_half_edge(i));
    return out;
}

inline ContractionResult contract(const WeightedGraph& g, const std::vector<EdgeId>& s) {
    return contract(g, std::set<EdgeId>(s.begin(), s.end()));
}

inline ContractionResult contract_edge(const WeightedGraph& g, EdgeId e) { return contract(g, std::set<EdgeId>{e}); }

namespace detail {

template <class Fn>
bool for_each_subset_of_size(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return false;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        if (fn(pick)) return true;
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

} // namespace detail

/// Some S with contract(big, S) isomorphic to small, the lexicographically
/// first one by sorted edge ids; nullopt when small is not a contraction of big.
inline std::optional<std::set<EdgeId>> leq(const WeightedGraph& small, const WeightedGraph& big) {
    if (small.num_edges() > big.num_edges() || small.genus() != big.genus() || small.num_legs() != big.num_legs() ||
        small.num_vertices() > big.num_vertices()) {
        return std::nullopt;
    }
    const auto target = canonical_key(small);
    std::optional<std::set<EdgeId>> witness;
    detail::for_each_subset_of_size(big.num_edges(), big.num_edges() - small.num_edges(),
                                    [&](const std::vector<std::size_t>& pick) {
                                        std::set<EdgeId> s;
                                        for (const auto e : pick) s.insert(make_id<EdgeId>(e));
                                        if (canonical_key(contract(big, s).graph) != target) return false;
                                        witness = std::move(s);
                                        return true;
                                    });
    return witness;
}

/// One isomorphism class of single-edge contractions of a graph.
struct CoverClass {
    CanonicalForm form;
    std::vector<EdgeId> edges; // edges whose contraction lands in this class
    bool loop = false;         // contracted edges are loops

    std::size_t multiplicity() const { return edges.size(); }
};

/// Distinct types G/e, sorted by canonical key, with multiplicities.
inline std::vector<CoverClass> covers(const WeightedGraph& g) {
    std::map<std::string, CoverClass> classes;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto id = make_id<EdgeId>(e);
        auto form = canonical_form(contract_edge(g, id).graph);
        auto [it, inserted] = classes.try_emplace(form.key);
        if (inserted) {
            it->second.form = std::move(form);
            it->second.loop = g.is_loop(id);
        }
        it->second.edges.push_back(id);
    }
    std::vector<CoverClass> out;
    for (auto& [key, cls] : classes) out.push_back(std::move(cls));
    return out;
}

struct Resolution {
    WeightedGraph graph;            // 3-regular, weight 0
    std::set<EdgeId> contracted;    // contract(graph, contracted) recovers the input
};

/// A 3-regular weight-0 graph contracting onto g. Each unit of weight becomes a
/// loop at its vertex; then any vertex of valence > 3 sheds its two lowest-id
/// half-edges onto a new vertex joined to it by a new edge. The original edges
/// keep their ids, new loops and splitting edges are appended.
inline Resolution resolve_to_trivalent(const WeightedGraph& g) {
    require_hyperbolic(g.genus(), static_cast<int>(g.num_legs()));
    if (!is_stable(g)) throw Error(ErrorCode::NotStable, "resolution requires a stable graph");

    std::vector<std::pair<int, int>> edges;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = g.ends(make_id<EdgeId>(e));
        edges.emplace_back(static_cast<int>(idx(a)), static_cast<int>(idx(b)));
    }
    std::vector<std::pair<int, int>> legs;
    for (std::size_t i = 0; i < g.num_legs(); ++i) {
        legs.emplace_back(g.leg_label_at(i), static_cast<int>(idx(g.leg_vertex_at(i))));
    }
    std::size_t nv = g.num_vertices();
    std::set<EdgeId> contracted;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        for (int k = 0; k < g.weight(make_id<VertexId>(v)); ++k) {
            contracted.insert(make_id<EdgeId>(edges.size()));
            edges.emplace_back(static_cast<int>(v), static_cast<int>(v));
        }
    }

    // Half-edge handles in final id order: (0, 2k + side) for edges, (1, i) for legs.
    using Handle = std::pair<int, std::size_t>;
    auto incident = [&](int v) {
        std::vector<Handle> out;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (edges[k].first == v) out.emplace_back(0, 2 * k);
            if (edges[k].second == v) out.emplace_back(0, 2 * k + 1);
        }
        for (std::size_t i = 0; i < legs.size(); ++i) {
            if (legs[i].second == v) out.emplace_back(1, i);
        }
        return out;
    };
    auto move_to = [&](const Handle& h, int v) {
        if (h.first == 1) {
            legs[h.second].second = v;
        } else if (h.second % 2 == 0) {
            edges[h.second / 2].first = v;
        } else {
            edges[h.second / 2].second = v;
        }
    };
    for (int v = 0; v < static_cast<int>(nv); ++v) {
        while (true) {
            const auto hs = incident(v);
            if (hs.size() <= 3) break;
            const int fresh = static_cast<int>(nv++);
            move_to(hs[0], fresh);
            move_to(hs[1], fresh);
            contracted.insert(make_id<EdgeId>(edges.size()));
            edges.emplace_back(v, fresh);
        }
    }

    GraphDescription raw;
    raw.weights.assign(nv, 0);
    raw.edges = std::move(edges);
    raw.legs = std::move(legs);
    return {validate(raw), std::move(contracted)};
}

} // namespace tropmod
