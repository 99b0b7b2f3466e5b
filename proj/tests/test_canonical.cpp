#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace tropmod;
using namespace tropmod::testing;

namespace {

/// Closure of the generators; aborts once `cap` elements are exceeded.
std::size_t generated_order(const std::vector<Permutation>& gens, std::size_t nv, std::size_t nh, std::size_t cap) {
    Permutation id;
    for (std::size_t v = 0; v < nv; ++v) id.vertices.push_back(make_id<VertexId>(v));
    for (std::size_t h = 0; h < nh; ++h) id.half_edges.push_back(make_id<HalfEdgeId>(h));
    auto key = [](const Permutation& p) {
        std::vector<int> k;
        for (auto v : p.vertices) k.push_back(static_cast<int>(idx(v)));
        for (auto h : p.half_edges) k.push_back(static_cast<int>(idx(h)));
        return k;
    };
    std::set<std::vector<int>> seen{key(id)};
    std::vector<Permutation> frontier{id};
    while (!frontier.empty() && seen.size() <= cap) {
        std::vector<Permutation> next;
        for (const auto& x : frontier) {
            for (const auto& s : gens) {
                Permutation y;
                for (std::size_t v = 0; v < nv; ++v) y.vertices.push_back(s.vertices[idx(x.vertices[v])]);
                for (std::size_t h = 0; h < nh; ++h) y.half_edges.push_back(s.half_edges[idx(x.half_edges[h])]);
                if (seen.insert(key(y)).second) next.push_back(std::move(y));
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

} // namespace

TEST(CanonicalForm, InvariantUnderRelabeling) {
    std::mt19937_64 rng(test_seed());
    const auto key = canonical_form(theta()).key;
    for (int i = 0; i < 20; ++i) EXPECT_EQ(canonical_form(shuffle_ids(theta(), rng)).key, key);
}

TEST(CanonicalForm, DistinguishesLegSplits) {
    EXPECT_NE(canonical_key(split04(1, 2, 3, 4)), canonical_key(split04(1, 3, 2, 4)));
    EXPECT_NE(canonical_key(split04(1, 2, 3, 4)), canonical_key(split04(1, 4, 2, 3)));
    EXPECT_EQ(canonical_key(split04(1, 2, 3, 4)), canonical_key(split04(4, 3, 2, 1)));
}

TEST(CanonicalForm, BananaWeightSwap) {
    EXPECT_EQ(canonical_key(banana(2, 1, 0)), canonical_key(banana(2, 0, 1)));
    EXPECT_NE(canonical_key(banana(2, 1, 0)), canonical_key(banana(2, 0, 0)));
}

TEST(CanonicalForm, SensitiveToLoopsAndMultiplicity) {
    EXPECT_NE(canonical_key(theta()), canonical_key(dumbbell()));
    EXPECT_NE(canonical_key(banana(2)), canonical_key(banana(3)));
    EXPECT_NE(canonical_key(loop_vertex()), canonical_key(single_vertex(1)));
}

TEST(CanonicalForm, IdempotentAndConsistent) {
    std::mt19937_64 rng(test_seed() + 1);
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = random_graph(rng, 5, 7, 2, 4);
        const auto form = canonical_form(g);
        const auto& c = form.graph;
        // the relabeling carries g onto the canonical graph
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            ASSERT_EQ(c.weight(form.vertex_map[v]), g.weight(make_id<VertexId>(v)));
        }
        for (std::size_t h = 0; h < g.num_half_edges(); ++h) {
            const auto id = make_id<HalfEdgeId>(h);
            ASSERT_EQ(c.endpoint(form.half_edge_map[h]), form.vertex_map[idx(g.endpoint(id))]);
            ASSERT_EQ(c.partner(form.half_edge_map[h]), form.half_edge_map[idx(g.partner(id))]);
            ASSERT_EQ(c.leg_label(form.half_edge_map[h]), g.leg_label(id));
        }
        const auto again = canonical_form(c);
        ASSERT_EQ(again.key, form.key);
        ASSERT_EQ(again.graph, c);
        for (std::size_t v = 0; v < c.num_vertices(); ++v) ASSERT_EQ(idx(again.vertex_map[v]), v);
        for (std::size_t h = 0; h < c.num_half_edges(); ++h) ASSERT_EQ(idx(again.half_edge_map[h]), h);
    }
}

TEST(IsIsomorphic, Examples) {
    EXPECT_TRUE(is_isomorphic(theta(), theta()));
    EXPECT_FALSE(brute_isomorphic(theta(), dumbbell()));
    EXPECT_FALSE(is_isomorphic(theta(), dumbbell()));
    EXPECT_FALSE(is_isomorphic(loop_with_leg(), make_graph({1}, {}, {{1, 0}})));
}

TEST(IsIsomorphic, AgreesWithBruteForce) {
    std::mt19937_64 rng(test_seed() + 2);
    std::size_t positives = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        // small sizes so that independent draws collide often
        const int nv = trial % 2 ? 2 : 3;
        const auto a = random_graph(rng, nv, 3, 1, 1);
        const auto b = random_graph(rng, nv, 3, 1, 1);
        const bool brute = brute_isomorphic(a, b);
        positives += brute ? 1 : 0;
        ASSERT_EQ(is_isomorphic(a, b), brute);
        ASSERT_TRUE(is_isomorphic(a, shuffle_ids(a, rng)));
    }
    EXPECT_GT(positives, 10u);
}

TEST(IsIsomorphic, OracleEquivalenceOnCorpus) {
    std::mt19937_64 rng(test_seed() + 3);
    for (int trial = 0; trial < 400; ++trial) {
        const auto a = random_graph(rng, 5, 6, 1, 3);
        const auto b = shuffle_ids(a, rng);
        ASSERT_EQ(canonical_key(a), canonical_key(b));
        const auto c = random_graph(rng, 5, 6, 1, 3);
        ASSERT_EQ(canonical_key(a) == canonical_key(c), brute_isomorphic(a, c));
    }
}

TEST(AutomorphismGroup, Banana) {
    std::uint64_t fact = 1;
    for (int k = 1; k <= 6; ++k) {
        fact *= static_cast<std::uint64_t>(k);
        const auto aut = automorphism_group(banana(k));
        EXPECT_EQ(aut.order, 2 * fact) << "banana " << k;
        EXPECT_EQ(aut.edge_action_order, fact) << "banana " << k;
    }
}

TEST(AutomorphismGroup, LoopInversion) {
    const auto aut = automorphism_group(loop_vertex());
    EXPECT_EQ(aut.order, 2u);
    EXPECT_EQ(aut.edge_action_order, 1u);
    EXPECT_TRUE(aut.edge_action_generators.empty());
}

TEST(AutomorphismGroup, Dumbbell) {
    EXPECT_EQ(brute_aut_order(dumbbell()), 8u);
    const auto aut = automorphism_group(dumbbell());
    EXPECT_EQ(aut.order, 8u);
    EXPECT_EQ(aut.edge_action_order, 2u);
}

TEST(AutomorphismGroup, MatchesBruteForce) {
    std::mt19937_64 rng(test_seed() + 4);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = random_graph(rng, 5, 6, 1, 2);
        const auto aut = automorphism_group(g);
        ASSERT_EQ(aut.order, brute_aut_order(g));
        ASSERT_EQ(aut.edge_action_order, brute_edge_action_order(g));
        ASSERT_EQ(aut.order % aut.edge_action_order, 0u);
        for (const auto& p : aut.generators) {
            for (std::size_t h = 0; h < g.num_half_edges(); ++h) {
                const auto id = make_id<HalfEdgeId>(h);
                ASSERT_EQ(g.endpoint(p.half_edges[h]), p.vertices[idx(g.endpoint(id))]);
                ASSERT_EQ(g.partner(p.half_edges[h]), p.half_edges[idx(g.partner(id))]);
                if (g.is_leg(id)) {
                    ASSERT_EQ(p.half_edges[h], id);
                }
            }
            for (std::size_t v = 0; v < g.num_vertices(); ++v) {
                ASSERT_EQ(g.weight(p.vertices[v]), g.weight(make_id<VertexId>(v)));
            }
        }
        if (aut.order <= 5000) {
            ASSERT_EQ(generated_order(aut.generators, g.num_vertices(), g.num_half_edges(), 6000), aut.order);
        }
    }
}

TEST(AutomorphismGroup, EdgeActionKernel) {
    // loops at distinct vertices: kernel is generated by the inversions
    const auto g = make_graph({0, 0, 0}, {{0, 0}, {0, 1}, {1, 2}, {2, 2}}, {{1, 1}});
    const auto aut = automorphism_group(g);
    EXPECT_EQ(aut.order, 8u);
    EXPECT_EQ(aut.order / aut.edge_action_order, 4u);
    // the endpoint swap of a weight-balanced banana acts trivially on edges
    const auto b = banana(1, 1, 1);
    const auto ab = automorphism_group(b);
    EXPECT_EQ(ab.order, 2u);
    EXPECT_EQ(ab.edge_action_order, 1u);
}

TEST(EdgeActionOrbit, ThetaLengths) {
    const auto g = theta();
    const auto aut = automorphism_group(g);
    EXPECT_EQ(edge_action_orbit(g, aut, std::vector<int>{1, 2, 3}).size(), 6u);
    EXPECT_EQ(edge_action_orbit(g, aut, std::vector<int>{1, 1, 1}).size(), 1u);
    EXPECT_EQ(min_edge_image(g, aut, std::vector<int>{3, 1, 2}), (std::vector<int>{1, 2, 3}));
}
