#pragma once

// Tropical curves: weighted graphs with edge lengths. Legs are infinitely long
// and carry no stored length.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropmod/canonical.hpp"
#include "tropmod/contraction.hpp"
#include "tropmod/graph.hpp"
#include "tropmod/length.hpp"
#include "tropmod/parallel.hpp"

namespace tropmod {

struct TropicalCurve {
    WeightedGraph graph;
    std::vector<Length> lengths; // indexed by EdgeId
    bool extended = false;       // infinite lengths allowed on every edge
};

/// Edge incident to a weight-0 vertex of valence 1.
inline bool is_leaf_edge(const WeightedGraph& g, EdgeId e) {
    const auto [a, b] = g.ends(e);
    auto leaf = [&](VertexId v) { return g.weight(v) == 0 && g.valence(v) == 1; };
    return leaf(a) || leaf(b);
}

/// Throws BadLength unless lengths are positive, leaf edges infinite and, for
/// pure curves, every other edge finite.
inline void check_curve(const TropicalCurve& c) {
    if (c.lengths.size() != c.graph.num_edges()) {
        throw Error(ErrorCode::BadLength, "expected " + std::to_string(c.graph.num_edges()) + " lengths, got " +
                                              std::to_string(c.lengths.size()));
    }
    for (std::size_t e = 0; e < c.lengths.size(); ++e) {
        const auto& l = c.lengths[e];
        const auto where = "edge " + std::to_string(e);
        if (!l.is_positive()) throw Error(ErrorCode::BadLength, where + " has non-positive length " + l.str());
        const bool leaf = is_leaf_edge(c.graph, make_id<EdgeId>(e));
        if (leaf && l.is_finite()) throw Error(ErrorCode::BadLength, where + " ends at a leaf and must be infinite");
        if (!leaf && !c.extended && l.is_infinite()) {
            throw Error(ErrorCode::BadLength, where + " is infinite in a non-extended curve");
        }
    }
}

/// Length `unit` on every edge, infinity on leaf edges.
inline TropicalCurve curve_with_uniform_lengths(const WeightedGraph& g, Length unit = Length(1)) {
    TropicalCurve c{g, {}, false};
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        c.lengths.push_back(is_leaf_edge(g, make_id<EdgeId>(e)) ? Length::infinity() : unit);
    }
    return c;
}

namespace detail {

/// Mutable scratch form of a metric graph used by the rewriting steps.
struct MetricWork {
    struct Edge {
        int a, b;
        Length length;
        bool alive = true;
    };
    std::vector<int> weights;
    std::vector<bool> alive;
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> legs; // (label, vertex)

    explicit MetricWork(const TropicalCurve& c) {
        const auto& g = c.graph;
        weights.assign(g.weights().begin(), g.weights().end());
        alive.assign(g.num_vertices(), true);
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            const auto [a, b] = g.ends(make_id<EdgeId>(e));
            edges.push_back({static_cast<int>(idx(a)), static_cast<int>(idx(b)), c.lengths[e]});
        }
        for (std::size_t i = 0; i < g.num_legs(); ++i) {
            legs.emplace_back(g.leg_label_at(i), static_cast<int>(idx(g.leg_vertex_at(i))));
        }
    }

    struct Star {
        std::vector<std::size_t> edge_ends; // edge index per incident edge half
        std::vector<std::size_t> legs;
        std::size_t valence() const { return edge_ends.size() + legs.size(); }
    };

    std::vector<Star> stars() const {
        std::vector<Star> out(weights.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!edges[e].alive) continue;
            out[static_cast<std::size_t>(edges[e].a)].edge_ends.push_back(e);
            out[static_cast<std::size_t>(edges[e].b)].edge_ends.push_back(e);
        }
        for (std::size_t i = 0; i < legs.size(); ++i) out[static_cast<std::size_t>(legs[i].second)].legs.push_back(i);
        return out;
    }

    int other_end(std::size_t e, int v) const { return edges[e].a == v ? edges[e].b : edges[e].a; }

    TropicalCurve finish(bool extended) const {
        std::vector<int> renumber(weights.size(), -1);
        GraphDescription raw;
        for (std::size_t v = 0; v < weights.size(); ++v) {
            if (!alive[v]) continue;
            renumber[v] = static_cast<int>(raw.weights.size());
            raw.weights.push_back(weights[v]);
        }
        TropicalCurve out;
        out.extended = extended;
        for (const auto& e : edges) {
            if (!e.alive) continue;
            raw.edges.emplace_back(renumber[static_cast<std::size_t>(e.a)], renumber[static_cast<std::size_t>(e.b)]);
            out.lengths.push_back(e.length);
        }
        for (const auto& [label, v] : legs) raw.legs.emplace_back(label, renumber[static_cast<std::size_t>(v)]);
        out.graph = validate(raw);
        return out;
    }
};

enum class StabilizationStep { RemoveLeaf, MergeEdges, AbsorbIntoLeg };

} // namespace detail

/// Tropical stabilization: delete weight-0 leaves with their edge, splice out
/// weight-0 2-valent vertices without legs (lengths add), and fold the edge at
/// a weight-0 2-valent vertex carrying a leg into that leg. Without an RNG the
/// steps run in that priority, lowest vertex first; with one, each rewrite is
/// picked uniformly among all applicable ones.
inline TropicalCurve stabilize(const TropicalCurve& c, std::mt19937_64* rng = nullptr) {
    require_hyperbolic(c.graph.genus(), static_cast<int>(c.graph.num_legs()));
    detail::MetricWork w(c);
    using Step = detail::StabilizationStep;
    while (true) {
        const auto stars = w.stars();
        std::vector<std::pair<Step, int>> moves;
        for (std::size_t v = 0; v < w.weights.size(); ++v) {
            if (!w.alive[v] || w.weights[v] != 0) continue;
            const auto& s = stars[v];
            if (s.valence() == 1 && s.legs.empty()) {
                moves.emplace_back(Step::RemoveLeaf, static_cast<int>(v));
            } else if (s.valence() == 2 && s.legs.empty() && s.edge_ends[0] != s.edge_ends[1]) {
                moves.emplace_back(Step::MergeEdges, static_cast<int>(v));
            } else if (s.valence() == 2 && s.legs.size() == 1) {
                moves.emplace_back(Step::AbsorbIntoLeg, static_cast<int>(v));
            } else if (s.valence() < 3) {
                throw Error(ErrorCode::DegenerateSignature, "curve reduces to an unstable single vertex");
            }
        }
        if (moves.empty()) break;
        std::pair<Step, int> move;
        if (rng != nullptr) {
            std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
            move = moves[pick(*rng)];
        } else {
            move = *std::min_element(moves.begin(), moves.end());
        }
        const auto v = static_cast<std::size_t>(move.second);
        const auto& s = stars[v];
        switch (move.first) {
        case Step::RemoveLeaf:
            w.edges[s.edge_ends[0]].alive = false;
            w.alive[v] = false;
            break;
        case Step::MergeEdges: {
            const auto keep = s.edge_ends[0];
            const auto drop = s.edge_ends[1];
            const int far = w.other_end(drop, move.second);
            auto& e = w.edges[keep];
            (e.a == move.second ? e.a : e.b) = far;
            e.length += w.edges[drop].length;
            w.edges[drop].alive = false;
            w.alive[v] = false;
            break;
        }
        case Step::AbsorbIntoLeg: {
            const auto e = s.edge_ends[0];
            w.legs[s.legs[0]].second = w.other_end(e, move.second);
            w.edges[e].alive = false;
            w.alive[v] = false;
            break;
        }
        }
    }
    return w.finish(c.extended);
}

/// Moves all but the first leg at each vertex onto a new weight-0 vertex joined
/// to it by an edge of length `spacing`.
inline TropicalCurve separate_legs(const TropicalCurve& c, Length spacing = Length(1)) {
    if (!spacing.is_positive() || spacing.is_infinite()) {
        throw Error(ErrorCode::BadLength, "leg spacing must be finite and positive");
    }
    GraphDescription raw = c.graph.description();
    auto lengths = c.lengths;
    std::vector<bool> has_leg(raw.weights.size(), false);
    for (auto& [label, v] : raw.legs) {
        const auto vi = static_cast<std::size_t>(v);
        if (!has_leg[vi]) {
            has_leg[vi] = true;
            continue;
        }
        const int fresh = static_cast<int>(raw.weights.size());
        raw.weights.push_back(0);
        has_leg.push_back(true);
        raw.edges.emplace_back(v, fresh);
        lengths.push_back(spacing);
        v = fresh;
    }
    return {validate(raw), std::move(lengths), c.extended};
}

/// The curve moved onto the canonical graph of its type, with the
/// lexicographically least length vector over automorphisms.
inline TropicalCurve canonical_curve(const TropicalCurve& c) {
    const auto form = canonical_form(c.graph);
    std::vector<Length> moved(c.lengths.size());
    for (std::size_t e = 0; e < c.lengths.size(); ++e) moved[idx(form.edge_of(make_id<EdgeId>(e)))] = c.lengths[e];
    const auto aut = automorphism_group(form.graph);
    return {form.graph, min_edge_image(form.graph, aut, moved), c.extended};
}

inline bool is_isometric(const TropicalCurve& a, const TropicalCurve& b) {
    const auto sa = canonical_curve(is_stable(a.graph) ? a : stabilize(a));
    const auto sb = canonical_curve(is_stable(b.graph) ? b : stabilize(b));
    return sa.graph == sb.graph && sa.lengths == sb.lengths;
}

/// A point of the closed cone over a base graph; zero coordinates mark edges
/// contracted in the corresponding face.
struct ConePoint {
    WeightedGraph base;
    std::vector<Length> coords;

    friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

inline void check_cone_point(const ConePoint& p) {
    if (p.coords.size() != p.base.num_edges()) {
        throw Error(ErrorCode::BadLength, "expected " + std::to_string(p.base.num_edges()) + " coordinates, got " +
                                              std::to_string(p.coords.size()));
    }
    for (const auto& x : p.coords) {
        if (x.is_infinite() || x < Length(0)) {
            throw Error(ErrorCode::BadLength, "cone coordinates must be finite and nonnegative, got " + x.str());
        }
    }
}

inline std::set<EdgeId> zero_edges(const ConePoint& p) {
    std::set<EdgeId> s;
    for (std::size_t e = 0; e < p.coords.size(); ++e) {
        if (p.coords[e].is_zero()) s.insert(make_id<EdgeId>(e));
    }
    return s;
}

/// Weighted contraction of the zero-length edges; the others keep their
/// coordinates as lengths.
inline TropicalCurve face_contract(const ConePoint& p) {
    check_cone_point(p);
    const auto res = contract(p.base, zero_edges(p));
    TropicalCurve c{res.graph, {}, false};
    for (const auto e : res.edge_embedding) c.lengths.push_back(p.coords[idx(e)]);
    return c;
}

/// All points of the closed cone parametrizing a curve isometric to the one
/// at p, sorted by coordinates. For each face whose contracted type matches,
/// the target lengths are transported through the canonical labeling and
/// moved by every automorphism of that type.
inline std::vector<ConePoint> fiber(const ConePoint& p, std::size_t workers = 1) {
    check_cone_point(p);
    if (!is_stable(p.base)) throw Error(ErrorCode::NotStable, "fiber requires a stable base graph");
    const auto target = canonical_curve(face_contract(p));
    const auto target_key = canonical_key(target.graph);
    const auto aut = automorphism_group(target.graph);
    const auto orbit = edge_action_orbit(target.graph, aut, target.lengths);

    const std::size_t ne = p.base.num_edges();
    const std::size_t k = zero_edges(p).size();
    std::vector<std::set<EdgeId>> faces;
    detail::for_each_subset_of_size(ne, k, [&](const std::vector<std::size_t>& pick) {
        std::set<EdgeId> s;
        for (const auto e : pick) s.insert(make_id<EdgeId>(e));
        faces.push_back(std::move(s));
        return false;
    });

    std::vector<std::vector<std::vector<Length>>> found(faces.size());
    parallel_for(faces.size(), workers, [&](std::size_t i) {
        const auto res = contract(p.base, faces[i]);
        const auto form = canonical_form(res.graph);
        if (form.key != target_key) return;
        for (const auto& lengths : orbit) {
            std::vector<Length> coords(ne, Length(0));
            for (std::size_t j = 0; j < res.edge_embedding.size(); ++j) {
                coords[idx(res.edge_embedding[j])] = lengths[idx(form.edge_of(make_id<EdgeId>(j)))];
            }
            found[i].push_back(std::move(coords));
        }
    });

    std::set<std::vector<Length>> merged;
    for (auto& part : found) merged.insert(part.begin(), part.end());
    std::vector<ConePoint> out;
    for (const auto& coords : merged) out.push_back({p.base, coords});
    return out;
}

} // namespace tropmod
