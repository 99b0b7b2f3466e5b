#pragma once

// Canonical labeling, isomorphism and automorphism groups of weighted graphs
// with labeled legs.
//
// The search works on vertices: colour refinement on (weight, valence, loop
// count, leg labels, neighbour colours with multiplicities), then
// individualization of the first non-singleton cell until the partition is
// discrete. Each leaf orders the vertices, and the leaf serialization (weights,
// loops, legs, multiplicity matrix) is compared lexicographically. Every leaf
// is visited, so the leaves attaining the minimum form one coset of the vertex
// automorphism group. Half-edge automorphisms are the lifts of these vertex
// maps together with the kernel that fixes every vertex: permutations of
// parallel edges and permutations/inversions of loops at a vertex. Legs are
// labeled and therefore fixed.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropmod/graph.hpp"

namespace tropmod {

enum class LegMode { Labeled, Unlabeled };

struct CanonicalForm {
    std::string key;
    std::vector<VertexId> vertex_map;      // original vertex -> canonical vertex
    std::vector<HalfEdgeId> half_edge_map; // original half-edge -> canonical half-edge
    WeightedGraph graph;                   // the canonical representative

    EdgeId edge_of(EdgeId e) const { return make_id<EdgeId>(idx(half_edge_map[2 * idx(e)]) / 2); }

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.key == b.key; }
    friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
        return a.key <=> b.key;
    }
};

/// A simultaneous permutation of V and H, stored as image arrays.
struct Permutation {
    std::vector<VertexId> vertices;
    std::vector<HalfEdgeId> half_edges;
    friend bool operator==(const Permutation&, const Permutation&) = default;
};

struct AutGroup {
    std::uint64_t order = 1;
    std::vector<Permutation> generators;
    std::uint64_t edge_action_order = 1;
    std::vector<std::vector<EdgeId>> edge_action_generators;
    /// All vertex permutations preserving the decorated multigraph.
    std::vector<std::vector<VertexId>> vertex_automorphisms;
};

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "automorphism group order overflows 64 bits");
    return out;
}

inline std::uint64_t factorial(std::size_t k) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= k; ++i) f = checked_mul(f, i);
    return f;
}

/// Vertex-level view of a graph: multiplicities, loops and leg decorations.
struct VertexView {
    std::size_t nv = 0;
    std::vector<std::vector<int>> mult; // non-loop multiplicities, symmetric
    std::vector<int> loops;
    std::vector<std::vector<int>> legs; // sorted labels (all 0 when unlabeled)

    VertexView(const WeightedGraph& g, LegMode mode)
        : nv(g.num_vertices()), mult(nv, std::vector<int>(nv, 0)), loops(nv, 0), legs(nv) {
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            const auto [a, b] = g.ends(make_id<EdgeId>(e));
            if (a == b) {
                ++loops[idx(a)];
            } else {
                ++mult[idx(a)][idx(b)];
                ++mult[idx(b)][idx(a)];
            }
        }
        for (std::size_t i = 0; i < g.num_legs(); ++i) {
            legs[idx(g.leg_vertex_at(i))].push_back(mode == LegMode::Labeled ? g.leg_label_at(i) : 0);
        }
        for (auto& l : legs) std::sort(l.begin(), l.end());
    }
};

class CanonicalSearch {
  public:
    CanonicalSearch(const WeightedGraph& g, LegMode mode) : g_(g), view_(g, mode) {
        if (view_.nv == 0) {
            best_key_ = header();
            best_orders_.push_back({});
            return;
        }
        using Sig = std::tuple<int, std::size_t, int, std::vector<int>>;
        std::vector<Sig> sigs;
        for (std::size_t v = 0; v < view_.nv; ++v) {
            sigs.emplace_back(g.weight(make_id<VertexId>(v)), g.valence(make_id<VertexId>(v)), view_.loops[v],
                              view_.legs[v]);
        }
        search(refine(dense_ranks(sigs)));
    }

    const std::vector<int>& best_key() const { return best_key_; }

    /// Position -> vertex orders attaining the minimum, ascending.
    std::vector<std::vector<std::size_t>> best_orders() const {
        auto orders = best_orders_;
        std::sort(orders.begin(), orders.end());
        return orders;
    }

  private:
    template <class T>
    static std::vector<int> dense_ranks(const std::vector<T>& sigs) {
        std::vector<T> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(sigs.size());
        for (std::size_t i = 0; i < sigs.size(); ++i) {
            out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
        }
        return out;
    }

    static int count_colors(const std::vector<int>& colors) {
        return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
    }

    std::vector<int> refine(std::vector<int> colors) const {
        int classes = count_colors(colors);
        while (true) {
            using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
            std::vector<Sig> sigs(view_.nv);
            for (std::size_t v = 0; v < view_.nv; ++v) {
                sigs[v].first = colors[v];
                for (std::size_t u = 0; u < view_.nv; ++u) {
                    if (view_.mult[v][u] > 0) sigs[v].second.emplace_back(colors[u], view_.mult[v][u]);
                }
                std::sort(sigs[v].second.begin(), sigs[v].second.end());
            }
            auto next = dense_ranks(sigs);
            const int next_classes = count_colors(next);
            if (next_classes == classes) return next;
            colors = std::move(next);
            classes = next_classes;
        }
    }

    std::vector<int> header() const {
        return {static_cast<int>(g_.num_vertices()), static_cast<int>(g_.num_edges()),
                static_cast<int>(g_.num_legs())};
    }

    std::vector<int> serialize(const std::vector<std::size_t>& order) const {
        std::vector<int> key = header();
        for (const auto v : order) {
            key.push_back(g_.weight(make_id<VertexId>(v)));
            key.push_back(view_.loops[v]);
            key.push_back(static_cast<int>(view_.legs[v].size()));
            key.insert(key.end(), view_.legs[v].begin(), view_.legs[v].end());
        }
        for (std::size_t p = 0; p < order.size(); ++p) {
            for (std::size_t q = p + 1; q < order.size(); ++q) key.push_back(view_.mult[order[p]][order[q]]);
        }
        return key;
    }

    void search(const std::vector<int>& colors) {
        const int classes = count_colors(colors);
        if (static_cast<std::size_t>(classes) == view_.nv) {
            std::vector<std::size_t> order(view_.nv);
            for (std::size_t v = 0; v < view_.nv; ++v) order[static_cast<std::size_t>(colors[v])] = v;
            auto key = serialize(order);
            if (best_orders_.empty() || key < best_key_) {
                best_key_ = std::move(key);
                best_orders_.clear();
                best_orders_.push_back(std::move(order));
            } else if (key == best_key_) {
                best_orders_.push_back(std::move(order));
            }
            return;
        }
        std::vector<int> cell_size(static_cast<std::size_t>(classes), 0);
        for (const int c : colors) ++cell_size[static_cast<std::size_t>(c)];
        int target = 0;
        while (cell_size[static_cast<std::size_t>(target)] < 2) ++target;
        for (std::size_t v = 0; v < view_.nv; ++v) {
            if (colors[v] != target) continue;
            std::vector<int> split(view_.nv);
            for (std::size_t u = 0; u < view_.nv; ++u) {
                split[u] = 2 * colors[u] + ((colors[u] == target && u != v) ? 1 : 0);
            }
            search(refine(dense_ranks(split)));
        }
    }

    const WeightedGraph& g_;
    VertexView view_;
    std::vector<int> best_key_;
    std::vector<std::vector<std::size_t>> best_orders_;
};

inline std::string encode_key(const std::vector<int>& ints) {
    std::string out;
    out.reserve(4 * ints.size());
    for (const int x : ints) {
        const auto u = static_cast<std::uint32_t>(x);
        out.push_back(static_cast<char>((u >> 24) & 0xFF));
        out.push_back(static_cast<char>((u >> 16) & 0xFF));
        out.push_back(static_cast<char>((u >> 8) & 0xFF));
        out.push_back(static_cast<char>(u & 0xFF));
    }
    return out;
}

/// Edges grouped by unordered endpoint pair, each group ascending by id.
inline std::map<std::pair<std::size_t, std::size_t>, std::vector<EdgeId>> parallel_classes(const WeightedGraph& g) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<EdgeId>> classes;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.ends(make_id<EdgeId>(e));
        auto lo = std::min(idx(a), idx(b));
        auto hi = std::max(idx(a), idx(b));
        classes[{lo, hi}].push_back(make_id<EdgeId>(e));
    }
    return classes;
}

} // namespace detail

/// Sets of mutually parallel edges (loops at a common vertex form one set).
inline std::vector<std::vector<EdgeId>> edge_classes(const WeightedGraph& g) {
    std::vector<std::vector<EdgeId>> out;
    for (auto& [ends, edges] : detail::parallel_classes(g)) out.push_back(edges);
    return out;
}

/// Only the key; Unlabeled mode forgets leg labels (used for shape counts).
inline std::string canonical_key(const WeightedGraph& g, LegMode mode = LegMode::Labeled) {
    return detail::encode_key(detail::CanonicalSearch(g, mode).best_key());
}

inline CanonicalForm canonical_form(const WeightedGraph& g) {
    detail::CanonicalSearch search(g, LegMode::Labeled);
    const auto order = search.best_orders().front();

    CanonicalForm form;
    form.key = detail::encode_key(search.best_key());
    form.vertex_map.resize(g.num_vertices());
    for (std::size_t p = 0; p < order.size(); ++p) form.vertex_map[order[p]] = make_id<VertexId>(p);

    // Canonical edges sorted by (lower position, upper position), original id
    // breaking ties inside a parallel class.
    struct Slot {
        std::size_t lo, hi, edge;
        auto operator<=>(const Slot&) const = default;
    };
    std::vector<Slot> slots;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = g.ends(make_id<EdgeId>(e));
        const auto pa = idx(form.vertex_map[idx(a)]);
        const auto pb = idx(form.vertex_map[idx(b)]);
        slots.push_back({std::min(pa, pb), std::max(pa, pb), e});
    }
    std::sort(slots.begin(), slots.end());

    GraphDescription raw;
    raw.weights.resize(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        raw.weights[idx(form.vertex_map[v])] = g.weight(make_id<VertexId>(v));
    }
    form.half_edge_map.resize(g.num_half_edges());
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& s = slots[k];
        raw.edges.emplace_back(static_cast<int>(s.lo), static_cast<int>(s.hi));
        const auto [h0, h1] = g.half_edges(make_id<EdgeId>(s.edge));
        const bool first_at_lo = idx(form.vertex_map[idx(g.endpoint(h0))]) == s.lo;
        form.half_edge_map[idx(h0)] = make_id<HalfEdgeId>(2 * k + (first_at_lo ? 0 : 1));
        form.half_edge_map[idx(h1)] = make_id<HalfEdgeId>(2 * k + (first_at_lo ? 1 : 0));
    }
    const std::size_t n = g.num_legs();
    raw.legs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = g.leg_label_at(i);
        const auto slot = static_cast<std::size_t>(label - 1);
        raw.legs[slot] = {label, static_cast<int>(idx(form.vertex_map[idx(g.leg_vertex_at(i))]))};
        form.half_edge_map[idx(g.leg_half_edge(i))] = make_id<HalfEdgeId>(2 * slots.size() + slot);
    }
    form.graph = validate(raw, g.is_connected() ? Connectivity::Required : Connectivity::Allowed);
    return form;
}

inline bool is_isomorphic(const WeightedGraph& a, const WeightedGraph& b) {
    return canonical_key(a) == canonical_key(b);
}

/// Lift of a vertex automorphism to half-edges: the i-th edge of a parallel
/// class goes to the i-th edge of the image class, endpoints matched; legs
/// and loop orientations are kept.
inline Permutation lift_vertex_automorphism(const WeightedGraph& g, std::span<const VertexId> sigma) {
    Permutation p;
    p.vertices.assign(sigma.begin(), sigma.end());
    p.half_edges.resize(g.num_half_edges());
    const auto classes = detail::parallel_classes(g);
    for (const auto& [ends, edges] : classes) {
        auto a = idx(sigma[ends.first]);
        auto b = idx(sigma[ends.second]);
        const auto& image = classes.at({std::min(a, b), std::max(a, b)});
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto [h0, h1] = g.half_edges(edges[i]);
            const auto [k0, k1] = g.half_edges(image[i]);
            if (ends.first == ends.second || sigma[idx(g.endpoint(h0))] == g.endpoint(k0)) {
                p.half_edges[idx(h0)] = k0;
                p.half_edges[idx(h1)] = k1;
            } else {
                p.half_edges[idx(h0)] = k1;
                p.half_edges[idx(h1)] = k0;
            }
        }
    }
    for (std::size_t i = 0; i < g.num_legs(); ++i) p.half_edges[idx(g.leg_half_edge(i))] = g.leg_half_edge(i);
    return p;
}

/// Induced permutation of E(G).
inline std::vector<EdgeId> edge_action(const WeightedGraph& g, const Permutation& p) {
    std::vector<EdgeId> out(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) out[e] = g.edge_of(p.half_edges[2 * e]);
    return out;
}

inline AutGroup automorphism_group(const WeightedGraph& g) {
    detail::CanonicalSearch search(g, LegMode::Labeled);
    const auto orders = search.best_orders();
    const std::size_t nv = g.num_vertices();

    AutGroup aut;
    for (const auto& order : orders) {
        std::vector<VertexId> sigma(nv);
        for (std::size_t p = 0; p < nv; ++p) sigma[orders.front()[p]] = make_id<VertexId>(order[p]);
        aut.vertex_automorphisms.push_back(std::move(sigma));
    }
    std::sort(aut.vertex_automorphisms.begin(), aut.vertex_automorphisms.end());

    // Greedy generating set for the vertex group.
    std::set<std::vector<VertexId>> generated;
    std::vector<std::vector<VertexId>> vertex_gens;
    {
        std::vector<VertexId> identity(nv);
        for (std::size_t v = 0; v < nv; ++v) identity[v] = make_id<VertexId>(v);
        generated.insert(identity);
    }
    for (const auto& sigma : aut.vertex_automorphisms) {
        if (generated.contains(sigma)) continue;
        vertex_gens.push_back(sigma);
        std::vector<std::vector<VertexId>> frontier(generated.begin(), generated.end());
        while (!frontier.empty()) {
            std::vector<std::vector<VertexId>> next;
            for (const auto& x : frontier) {
                for (const auto& s : vertex_gens) {
                    std::vector<VertexId> y(nv);
                    for (std::size_t v = 0; v < nv; ++v) y[v] = s[idx(x[v])];
                    if (generated.insert(y).second) next.push_back(std::move(y));
                }
            }
            frontier = std::move(next);
        }
    }
    for (const auto& s : vertex_gens) aut.generators.push_back(lift_vertex_automorphism(g, s));

    // Kernel fixing every vertex.
    std::vector<VertexId> identity(nv);
    for (std::size_t v = 0; v < nv; ++v) identity[v] = make_id<VertexId>(v);
    const auto base = lift_vertex_automorphism(g, identity);
    std::uint64_t kernel_order = 1;
    std::size_t loop_count = 0;
    for (const auto& [ends, edges] : detail::parallel_classes(g)) {
        const bool loop = ends.first == ends.second;
        kernel_order = detail::checked_mul(kernel_order, detail::factorial(edges.size()));
        if (loop) {
            loop_count += edges.size();
            for (std::size_t i = 0; i < edges.size(); ++i) kernel_order = detail::checked_mul(kernel_order, 2);
            auto inversion = base;
            const auto [h0, h1] = g.half_edges(edges.front());
            inversion.half_edges[idx(h0)] = h1;
            inversion.half_edges[idx(h1)] = h0;
            aut.generators.push_back(std::move(inversion));
        }
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            auto swap = base;
            const auto [a0, a1] = g.half_edges(edges[i]);
            const auto [b0, b1] = g.half_edges(edges[i + 1]);
            const bool aligned = g.endpoint(a0) == g.endpoint(b0);
            swap.half_edges[idx(a0)] = aligned ? b0 : b1;
            swap.half_edges[idx(a1)] = aligned ? b1 : b0;
            swap.half_edges[idx(b0)] = aligned ? a0 : a1;
            swap.half_edges[idx(b1)] = aligned ? a1 : a0;
            aut.generators.push_back(std::move(swap));
        }
    }
    aut.order = detail::checked_mul(aut.vertex_automorphisms.size(), kernel_order);

    // Automorphisms acting trivially on edges: loop inversions, times vertex
    // maps fixing every edge's endpoint set.
    std::uint64_t trivial_vertex_maps = 0;
    for (const auto& sigma : aut.vertex_automorphisms) {
        bool fixes = true;
        for (std::size_t e = 0; e < g.num_edges() && fixes; ++e) {
            const auto [a, b] = g.ends(make_id<EdgeId>(e));
            const auto sa = sigma[idx(a)];
            const auto sb = sigma[idx(b)];
            fixes = (sa == a && sb == b) || (sa == b && sb == a);
        }
        if (fixes) ++trivial_vertex_maps;
    }
    std::uint64_t kernel = trivial_vertex_maps;
    for (std::size_t i = 0; i < loop_count; ++i) kernel = detail::checked_mul(kernel, 2);
    aut.edge_action_order = aut.order / kernel;

    std::set<std::vector<EdgeId>> seen;
    std::vector<EdgeId> edge_identity(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) edge_identity[e] = make_id<EdgeId>(e);
    for (const auto& gen : aut.generators) {
        auto action = edge_action(g, gen);
        if (action != edge_identity && seen.insert(action).second) aut.edge_action_generators.push_back(action);
    }
    return aut;
}

namespace detail {

/// Applies every rearrangement inside each parallel class of `values`
/// (indexed by edge) and reports each distinct result.
template <class T, class Fn>
void for_each_class_rearrangement(const std::vector<std::vector<EdgeId>>& classes, std::vector<T> values, Fn&& fn,
                                  std::size_t cls = 0) {
    if (cls == classes.size()) {
        fn(values);
        return;
    }
    const auto& members = classes[cls];
    std::vector<T> part;
    for (const auto e : members) part.push_back(values[idx(e)]);
    std::sort(part.begin(), part.end());
    do {
        for (std::size_t i = 0; i < members.size(); ++i) values[idx(members[i])] = part[i];
        for_each_class_rearrangement(classes, values, fn, cls + 1);
    } while (std::next_permutation(part.begin(), part.end()));
}

} // namespace detail

/// Distinct images of an edge-indexed vector under the edge action of Aut(G).
/// An automorphism alpha sends `values` to the vector w with w[alpha(e)] = values[e].
template <class T>
std::set<std::vector<T>> edge_action_orbit(const WeightedGraph& g, const AutGroup& aut, const std::vector<T>& values) {
    std::set<std::vector<T>> orbit;
    const auto classes = edge_classes(g);
    for (const auto& sigma : aut.vertex_automorphisms) {
        const auto action = edge_action(g, lift_vertex_automorphism(g, sigma));
        std::vector<T> moved(values.size());
        for (std::size_t e = 0; e < values.size(); ++e) moved[idx(action[e])] = values[e];
        detail::for_each_class_rearrangement(classes, std::move(moved),
                                             [&](const std::vector<T>& v) { orbit.insert(v); });
    }
    return orbit;
}

/// Lexicographically least image of `values` under the edge action of Aut(G).
template <class T>
std::vector<T> min_edge_image(const WeightedGraph& g, const AutGroup& aut, const std::vector<T>& values) {
    const auto classes = edge_classes(g);
    std::vector<T> best;
    bool first = true;
    for (const auto& sigma : aut.vertex_automorphisms) {
        const auto action = edge_action(g, lift_vertex_automorphism(g, sigma));
        std::vector<T> moved(values.size());
        for (std::size_t e = 0; e < values.size(); ++e) moved[idx(action[e])] = values[e];
        for (const auto& members : classes) {
            std::vector<T> part;
            for (const auto e : members) part.push_back(moved[idx(e)]);
            std::sort(part.begin(), part.end());
            for (std::size_t i = 0; i < members.size(); ++i) moved[idx(members[i])] = part[i];
        }
        if (first || moved < best) {
            best = std::move(moved);
            first = false;
        }
    }
    return best;
}

} // namespace tropmod
