#pragma once

// Weighted combinatorial graphs with labeled legs, in the half-edge model.
//
// Layout of half-edge ids in every WeightedGraph: edge k owns half-edges 2k and
// 2k+1 (paired by the involution), and leg i owns half-edge 2|E| + i, which is
// a fixed point of the involution. Edges and legs keep the order in which they
// were supplied, so ids (and everything derived from them) are deterministic.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropmod/error.hpp"

namespace tropmod {

enum class VertexId : std::int32_t {};
enum class HalfEdgeId : std::int32_t {};
enum class EdgeId : std::int32_t {};

template <class Id>
constexpr std::size_t idx(Id id) noexcept {
    return static_cast<std::size_t>(id);
}

template <class Id>
constexpr Id make_id(std::size_t i) noexcept {
    return static_cast<Id>(static_cast<std::int32_t>(i));
}

struct HalfEdge {
    HalfEdgeId id;
    VertexId endpoint;
    HalfEdgeId partner;
    std::optional<int> leg_label;
};

/// Unchecked input for validate(). Vertices are referenced by position.
struct GraphDescription {
    std::vector<int> weights;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> legs; // (label, vertex)
};

/// Public graphs must be connected; contraction bookkeeping may build
/// disconnected intermediates with Connectivity::Allowed.
enum class Connectivity { Required, Allowed };

/// Disjoint-set forest over dense indices.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

  private:
    std::vector<std::size_t> parent_;
};

class WeightedGraph {
  public:
    WeightedGraph() = default;

    friend WeightedGraph validate(const GraphDescription& raw, Connectivity connectivity);

    std::size_t num_vertices() const noexcept { return weights_.size(); }
    std::size_t num_edges() const noexcept { return edge_ends_.size(); }
    std::size_t num_legs() const noexcept { return leg_vertex_.size(); }
    std::size_t num_half_edges() const noexcept { return 2 * num_edges() + num_legs(); }

    int weight(VertexId v) const { return weights_[idx(v)]; }
    std::span<const int> weights() const noexcept { return weights_; }
    int total_weight() const noexcept { return std::accumulate(weights_.begin(), weights_.end(), 0); }

    bool is_leg(HalfEdgeId h) const noexcept { return idx(h) >= 2 * num_edges(); }

    VertexId endpoint(HalfEdgeId h) const {
        const auto i = idx(h);
        if (i >= 2 * num_edges()) return leg_vertex_[i - 2 * num_edges()];
        const auto& ends = edge_ends_[i / 2];
        return (i % 2 == 0) ? ends.first : ends.second;
    }

    HalfEdgeId partner(HalfEdgeId h) const noexcept {
        const auto i = idx(h);
        if (i >= 2 * num_edges()) return h;
        return make_id<HalfEdgeId>(i ^ 1U);
    }

    std::optional<int> leg_label(HalfEdgeId h) const {
        if (!is_leg(h)) return std::nullopt;
        return leg_label_[idx(h) - 2 * num_edges()];
    }

    HalfEdge half_edge(HalfEdgeId h) const { return {h, endpoint(h), partner(h), leg_label(h)}; }

    /// Edge owning a non-leg half-edge.
    EdgeId edge_of(HalfEdgeId h) const noexcept { return make_id<EdgeId>(idx(h) / 2); }

    std::pair<HalfEdgeId, HalfEdgeId> half_edges(EdgeId e) const noexcept {
        return {make_id<HalfEdgeId>(2 * idx(e)), make_id<HalfEdgeId>(2 * idx(e) + 1)};
    }

    std::pair<VertexId, VertexId> ends(EdgeId e) const { return edge_ends_[idx(e)]; }
    bool is_loop(EdgeId e) const { return ends(e).first == ends(e).second; }
    bool has_edge(EdgeId e) const noexcept { return idx(e) < num_edges(); }
    bool has_vertex(VertexId v) const noexcept { return idx(v) < num_vertices(); }

    /// Leg i in input order: its half-edge, label and endpoint.
    HalfEdgeId leg_half_edge(std::size_t i) const noexcept { return make_id<HalfEdgeId>(2 * num_edges() + i); }
    int leg_label_at(std::size_t i) const { return leg_label_[i]; }
    VertexId leg_vertex_at(std::size_t i) const { return leg_vertex_[i]; }

    VertexId leg_vertex(int label) const {
        for (std::size_t i = 0; i < num_legs(); ++i) {
            if (leg_label_[i] == label) return leg_vertex_[i];
        }
        throw Error(ErrorCode::InvalidLegLabel, "no leg labeled " + std::to_string(label));
    }

    /// Half-edges (legs included) with endpoint v, ascending by id.
    std::span<const HalfEdgeId> incident(VertexId v) const { return incident_[idx(v)]; }

    std::size_t valence(VertexId v) const { return incident_[idx(v)].size(); }

    std::size_t component_count() const {
        UnionFind uf(num_vertices());
        std::size_t comps = num_vertices();
        for (const auto& [a, b] : edge_ends_) {
            if (uf.unite(idx(a), idx(b))) --comps;
        }
        return comps;
    }

    bool is_connected() const { return component_count() == 1; }

    /// b1 = |E| - |V| + c
    int first_betti() const {
        return static_cast<int>(num_edges()) - static_cast<int>(num_vertices()) +
               static_cast<int>(component_count());
    }

    int genus() const { return first_betti() + total_weight(); }

    GraphDescription description() const {
        GraphDescription raw;
        raw.weights = weights_;
        for (const auto& [a, b] : edge_ends_) raw.edges.emplace_back(static_cast<int>(idx(a)), static_cast<int>(idx(b)));
        for (std::size_t i = 0; i < num_legs(); ++i) {
            raw.legs.emplace_back(leg_label_[i], static_cast<int>(idx(leg_vertex_[i])));
        }
        return raw;
    }

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

  private:
    std::vector<int> weights_;
    std::vector<std::pair<VertexId, VertexId>> edge_ends_;
    std::vector<VertexId> leg_vertex_;
    std::vector<int> leg_label_;
    std::vector<std::vector<HalfEdgeId>> incident_;
};

inline WeightedGraph validate(const GraphDescription& raw, Connectivity connectivity = Connectivity::Required) {
    const auto nv = raw.weights.size();
    for (std::size_t v = 0; v < nv; ++v) {
        if (raw.weights[v] < 0) {
            throw Error(ErrorCode::NegativeWeight,
                        "vertex " + std::to_string(v) + " has weight " + std::to_string(raw.weights[v]));
        }
    }
    auto check_vertex = [nv](int v, const std::string& where) {
        if (v < 0 || static_cast<std::size_t>(v) >= nv) {
            throw Error(ErrorCode::DanglingEndpoint, where + " references missing vertex " + std::to_string(v));
        }
    };
    for (std::size_t e = 0; e < raw.edges.size(); ++e) {
        check_vertex(raw.edges[e].first, "edge " + std::to_string(e));
        check_vertex(raw.edges[e].second, "edge " + std::to_string(e));
    }
    const auto n = raw.legs.size();
    std::vector<bool> seen(n + 1, false);
    for (const auto& [label, v] : raw.legs) {
        check_vertex(v, "leg " + std::to_string(label));
        if (label >= 1 && static_cast<std::size_t>(label) <= n) {
            if (seen[static_cast<std::size_t>(label)]) {
                throw Error(ErrorCode::DuplicateLegLabel, "leg label " + std::to_string(label) + " used twice");
            }
            seen[static_cast<std::size_t>(label)] = true;
        }
    }
    for (const auto& [label, v] : raw.legs) {
        if (label < 1 || static_cast<std::size_t>(label) > n) {
            throw Error(ErrorCode::InvalidLegLabel,
                        "leg label " + std::to_string(label) + " outside 1.." + std::to_string(n));
        }
    }

    WeightedGraph g;
    g.weights_ = raw.weights;
    for (const auto& [a, b] : raw.edges) {
        g.edge_ends_.emplace_back(make_id<VertexId>(static_cast<std::size_t>(a)),
                                  make_id<VertexId>(static_cast<std::size_t>(b)));
    }
    for (const auto& [label, v] : raw.legs) {
        g.leg_vertex_.push_back(make_id<VertexId>(static_cast<std::size_t>(v)));
        g.leg_label_.push_back(label);
    }
    g.incident_.assign(nv, {});
    for (std::size_t h = 0; h < g.num_half_edges(); ++h) {
        const auto he = make_id<HalfEdgeId>(h);
        g.incident_[idx(g.endpoint(he))].push_back(he);
    }
    if (connectivity == Connectivity::Required && (nv == 0 || !g.is_connected())) {
        throw Error(ErrorCode::Disconnected, "graph has " + std::to_string(nv == 0 ? 0 : g.component_count()) +
                                                 " connected components");
    }
    return g;
}

inline std::size_t valence(const WeightedGraph& g, VertexId v) {
    if (!g.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(idx(v)));
    return g.valence(v);
}

inline int first_betti(const WeightedGraph& g) { return g.first_betti(); }

/// g = b1 + |w|
inline int genus(const WeightedGraph& g) { return g.genus(); }

/// 2w(v) - 2 + val(v); the degree of the dualizing sheaf twisted by the marked
/// points on the component corresponding to v.
inline int stability_degree(const WeightedGraph& g, VertexId v) {
    return 2 * g.weight(v) - 2 + static_cast<int>(valence(g, v));
}

struct OffendingVertex {
    VertexId vertex;
    int weight;
    std::size_t valence;
    int degree;
    friend bool operator==(const OffendingVertex&, const OffendingVertex&) = default;
};

struct StabilityReport {
    bool stable = true;
    std::vector<OffendingVertex> offending;
};

inline StabilityReport check_stable(const WeightedGraph& g) {
    StabilityReport report;
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
        const auto v = make_id<VertexId>(i);
        const int degree = stability_degree(g, v);
        if (degree <= 0) report.offending.push_back({v, g.weight(v), g.valence(v), degree});
    }
    report.stable = report.offending.empty();
    return report;
}

inline bool is_stable(const WeightedGraph& g) { return check_stable(g).stable; }

/// Every vertex 3-valent and of weight 0.
inline bool is_trivalent(const WeightedGraph& g) {
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
        const auto v = make_id<VertexId>(i);
        if (g.weight(v) != 0 || g.valence(v) != 3) return false;
    }
    return true;
}

/// 2g - 2 + n >= 1
inline bool is_hyperbolic_signature(int g, int n) { return 2 * g - 2 + n >= 1; }

inline void require_hyperbolic(int g, int n) {
    if (!is_hyperbolic_signature(g, n)) {
        throw Error(ErrorCode::DegenerateSignature,
                    "2g-2+n < 1 for (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    }
}

} // namespace tropmod
