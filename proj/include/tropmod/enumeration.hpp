#pragma once

// Exhaustive enumeration of stable weighted graph types of signature (g, n)
// and the poset of single-edge contractions between them.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tropmod/canonical.hpp"
#include "tropmod/contraction.hpp"
#include "tropmod/graph.hpp"
#include "tropmod/parallel.hpp"

namespace tropmod {

struct PosetNode {
    CanonicalForm form; // form.graph is the representative, in canonical ids
    std::size_t num_edges = 0;

    const WeightedGraph& graph() const { return form.graph; }
};

/// from covers to: `to` is a contraction of `from` by one edge.
struct CoverEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t multiplicity = 0;
    bool loop = false;
    friend bool operator==(const CoverEdge&, const CoverEdge&) = default;
};

struct StrataPoset {
    int g = 0;
    int n = 0;
    std::vector<PosetNode> nodes; // sorted by (|E|, key)
    std::vector<CoverEdge> covers; // sorted by (from, to)

    int max_edges() const { return 3 * g - 3 + n; }

    std::optional<std::size_t> find(const std::string& key) const {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].form.key == key) return i;
        }
        return std::nullopt;
    }

    std::vector<std::size_t> maximal_nodes() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (static_cast<int>(nodes[i].num_edges) == max_edges()) out.push_back(i);
        }
        return out;
    }
};

namespace detail {

inline void pair_slots(std::vector<int>& slot_vertex, std::vector<bool>& used, std::vector<std::pair<int, int>>& edges,
                       const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
    std::size_t first = 0;
    while (first < used.size() && used[first]) ++first;
    if (first == used.size()) {
        emit(edges);
        return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < used.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        edges.emplace_back(slot_vertex[first], slot_vertex[j]);
        pair_slots(slot_vertex, used, edges, emit);
        edges.pop_back();
        used[j] = false;
    }
    used[first] = false;
}

} // namespace detail

/// Connected 3-regular weight-0 graphs with legs 1..n and b1 = g, one per
/// isomorphism class, sorted by canonical key. Generated from every
/// assignment of legs to the 2g-2+n vertices (leg 1 pinned to vertex 0) and
/// every perfect pairing of the remaining half-edge slots.
inline std::vector<WeightedGraph> enumerate_trivalent(int g, int n, std::size_t workers = 1) {
    require_hyperbolic(g, n);
    const int nv = 2 * g - 2 + n;

    std::vector<std::vector<int>> assignments;
    std::vector<int> current(static_cast<std::size_t>(n), 0);
    std::vector<int> load(static_cast<std::size_t>(nv), 0);
    std::function<void(int)> assign = [&](int leg) {
        if (leg == n) {
            assignments.push_back(current);
            return;
        }
        const int limit = leg == 0 ? 1 : nv;
        for (int v = 0; v < limit; ++v) {
            if (load[static_cast<std::size_t>(v)] == 3) continue;
            ++load[static_cast<std::size_t>(v)];
            current[static_cast<std::size_t>(leg)] = v;
            assign(leg + 1);
            --load[static_cast<std::size_t>(v)];
        }
    };
    assign(0);

    std::vector<std::map<std::string, WeightedGraph>> found(assignments.size());
    parallel_for(assignments.size(), workers, [&](std::size_t i) {
        GraphDescription raw;
        raw.weights.assign(static_cast<std::size_t>(nv), 0);
        std::vector<int> free_slots(static_cast<std::size_t>(nv), 3);
        for (int leg = 0; leg < n; ++leg) {
            const int v = assignments[i][static_cast<std::size_t>(leg)];
            raw.legs.emplace_back(leg + 1, v);
            --free_slots[static_cast<std::size_t>(v)];
        }
        std::vector<int> slot_vertex;
        for (int v = 0; v < nv; ++v) {
            for (int k = 0; k < free_slots[static_cast<std::size_t>(v)]; ++k) slot_vertex.push_back(v);
        }
        std::vector<bool> used(slot_vertex.size(), false);
        std::vector<std::pair<int, int>> edges;
        detail::pair_slots(slot_vertex, used, edges, [&](const std::vector<std::pair<int, int>>& pairing) {
            raw.edges = pairing;
            auto graph = validate(raw, Connectivity::Allowed);
            if (!graph.is_connected()) return;
            auto form = canonical_form(graph);
            found[i].try_emplace(std::move(form.key), std::move(form.graph));
        });
    });

    std::map<std::string, WeightedGraph> merged;
    for (auto& part : found) merged.merge(part);
    std::vector<WeightedGraph> out;
    for (auto& [key, graph] : merged) out.push_back(std::move(graph));
    return out;
}

/// Breadth-first closure of the trivalent types under single-edge contraction.
inline StrataPoset enumerate_all(int g, int n, std::size_t workers = 1) {
    require_hyperbolic(g, n);
    std::map<std::string, CanonicalForm> known;
    std::vector<std::tuple<std::string, std::string, std::size_t, bool>> cover_keys;

    std::vector<CanonicalForm> frontier;
    for (auto& graph : enumerate_trivalent(g, n, workers)) {
        auto form = canonical_form(graph);
        known.emplace(form.key, form);
        frontier.push_back(std::move(form));
    }
    while (!frontier.empty()) {
        std::vector<std::vector<CoverClass>> found(frontier.size());
        parallel_for(frontier.size(), workers, [&](std::size_t i) { found[i] = covers(frontier[i].graph); });
        std::vector<CanonicalForm> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            for (auto& cls : found[i]) {
                cover_keys.emplace_back(frontier[i].key, cls.form.key, cls.multiplicity(), cls.loop);
                if (known.emplace(cls.form.key, cls.form).second) next.push_back(std::move(cls.form));
            }
        }
        frontier = std::move(next);
    }

    StrataPoset poset;
    poset.g = g;
    poset.n = n;
    for (auto& [key, form] : known) poset.nodes.push_back({form, form.graph.num_edges()});
    std::sort(poset.nodes.begin(), poset.nodes.end(), [](const PosetNode& a, const PosetNode& b) {
        return std::tie(a.num_edges, a.form.key) < std::tie(b.num_edges, b.form.key);
    });
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < poset.nodes.size(); ++i) index[poset.nodes[i].form.key] = i;
    for (const auto& [from, to, mult, loop] : cover_keys) {
        poset.covers.push_back({index.at(from), index.at(to), mult, loop});
    }
    std::sort(poset.covers.begin(), poset.covers.end(), [](const CoverEdge& a, const CoverEdge& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    return poset;
}

/// Number of types with k edges, k = 0 .. 3g-3+n.
inline std::vector<std::size_t> f_vector(const StrataPoset& p) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(p.max_edges() + 1, 0)), 0);
    for (const auto& node : p.nodes) ++counts[node.num_edges];
    return counts;
}

/// f-vector after forgetting leg labels; for comparing with pictures that draw
/// unlabeled legs.
inline std::vector<std::size_t> shape_f_vector(const StrataPoset& p) {
    std::vector<std::set<std::string>> shapes(static_cast<std::size_t>(std::max(p.max_edges() + 1, 0)));
    for (const auto& node : p.nodes) shapes[node.num_edges].insert(canonical_key(node.graph(), LegMode::Unlabeled));
    std::vector<std::size_t> counts;
    for (const auto& s : shapes) counts.push_back(s.size());
    return counts;
}

/// Whether the maximal types stay connected when two are joined through any
/// common codimension-one contraction.
inline bool codim1_connected(const StrataPoset& p) {
    const auto maximal = p.maximal_nodes();
    if (maximal.empty()) return false;
    UnionFind uf(p.nodes.size());
    for (const auto& c : p.covers) {
        if (static_cast<int>(p.nodes[c.from].num_edges) == p.max_edges() &&
            static_cast<int>(p.nodes[c.to].num_edges) == p.max_edges() - 1) {
            uf.unite(c.from, c.to);
        }
    }
    const auto root = uf.find(maximal.front());
    return std::all_of(maximal.begin(), maximal.end(), [&](std::size_t m) { return uf.find(m) == root; });
}

enum class Direction { Down, Up };

/// Down: `graph` = previous / edge (edge of the previous graph).
/// Up: previous = `graph` / edge (edge of `graph`).
struct ZigZagStep {
    WeightedGraph graph;
    EdgeId edge;
    Direction direction;
};

namespace detail {

inline std::optional<EdgeId> non_loop_edge_onto(const WeightedGraph& from, const std::string& key) {
    for (std::size_t e = 0; e < from.num_edges(); ++e) {
        const auto id = make_id<EdgeId>(e);
        if (!from.is_loop(id) && canonical_key(contract_edge(from, id).graph) == key) return id;
    }
    return std::nullopt;
}

} // namespace detail

/// Zig-zag of non-loop single-edge contractions between two trivalent types,
/// alternating Down/Up, found by breadth-first search over the maximal types
/// of the poset. Empty when a and b are isomorphic.
inline std::vector<ZigZagStep> ht_path(const WeightedGraph& a, const WeightedGraph& b, const StrataPoset& p) {
    for (const auto* x : {&a, &b}) {
        if (!is_trivalent(*x)) throw Error(ErrorCode::NotTrivalent, "zig-zag endpoints must be 3-regular of weight 0");
        if (x->genus() != p.g || static_cast<int>(x->num_legs()) != p.n) {
            throw Error(ErrorCode::NotTrivalent, "zig-zag endpoint does not have signature (" + std::to_string(p.g) +
                                                     "," + std::to_string(p.n) + ")");
        }
    }
    const auto start = p.find(canonical_key(a));
    const auto goal = p.find(canonical_key(b));
    if (!start || !goal) throw Error(ErrorCode::NoPath, "endpoint missing from the enumerated poset");
    if (*start == *goal) return {};

    std::map<std::size_t, std::vector<std::size_t>> down;  // maximal -> codim-1 via non-loop edges
    std::map<std::size_t, std::vector<std::size_t>> up;    // codim-1 -> maximal
    for (const auto& c : p.covers) {
        if (c.loop || static_cast<int>(p.nodes[c.from].num_edges) != p.max_edges()) continue;
        down[c.from].push_back(c.to);
        up[c.to].push_back(c.from);
    }
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> parent; // maximal -> (previous maximal, codim-1)
    std::deque<std::size_t> queue{*start};
    parent[*start] = {*start, *start};
    while (!queue.empty() && !parent.contains(*goal)) {
        const auto m = queue.front();
        queue.pop_front();
        for (const auto c : down[m]) {
            for (const auto next : up[c]) {
                if (parent.try_emplace(next, m, c).second) queue.push_back(next);
            }
        }
    }
    if (!parent.contains(*goal)) throw Error(ErrorCode::NoPath, "no zig-zag between the given trivalent types");

    std::vector<std::pair<std::size_t, std::size_t>> hops; // (codim-1, maximal)
    for (auto m = *goal; m != *start; m = parent[m].first) hops.emplace_back(parent[m].second, m);
    std::reverse(hops.begin(), hops.end());

    std::vector<ZigZagStep> path;
    WeightedGraph current = a;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        const auto& [c, m] = hops[i];
        const auto e = detail::non_loop_edge_onto(current, p.nodes[c].form.key);
        if (!e) throw Error(ErrorCode::NoPath, "lost a downward contraction while rebuilding the path");
        current = contract_edge(current, *e).graph;
        path.push_back({current, *e, Direction::Down});
        const WeightedGraph& target = (i + 1 == hops.size()) ? b : p.nodes[m].graph();
        const auto e2 = detail::non_loop_edge_onto(target, canonical_key(current));
        if (!e2) throw Error(ErrorCode::NoPath, "lost an upward contraction while rebuilding the path");
        current = target;
        path.push_back({current, *e2, Direction::Up});
    }
    return path;
}

inline std::vector<ZigZagStep> ht_path(const WeightedGraph& a, const WeightedGraph& b, std::size_t workers = 1) {
    return ht_path(a, b, enumerate_all(a.genus(), static_cast<int>(a.num_legs()), workers));
}

} // namespace tropmod
