#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace tropmod;
using namespace tropmod::testing;

namespace {

TropicalCurve curve(const WeightedGraph& g, std::vector<Length> lengths, bool extended = false) {
    TropicalCurve c{g, std::move(lengths), extended};
    check_curve(c);
    return c;
}

std::vector<Length> L(std::initializer_list<std::int64_t> xs) {
    std::vector<Length> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

Length finite_total(const TropicalCurve& c) {
    Length t(0);
    for (const auto& l : c.lengths) {
        if (l.is_finite()) t = t + l;
    }
    return t;
}

/// Random finite lengths on the non-leaf edges of g.
TropicalCurve random_curve(const WeightedGraph& g, std::mt19937_64& rng, int max_len) {
    auto c = curve_with_uniform_lengths(g);
    for (auto& l : c.lengths) {
        if (l.is_finite()) l = Length(std::uniform_int_distribution<int>(1, max_len)(rng));
    }
    return c;
}

/// The same curve with vertices, edges and edge orientations relabeled.
TropicalCurve shuffle_curve(const TropicalCurve& c, std::mt19937_64& rng) {
    const auto& g = c.graph;
    std::vector<int> vperm(g.num_vertices());
    std::iota(vperm.begin(), vperm.end(), 0);
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::vector<std::size_t> eorder(g.num_edges());
    std::iota(eorder.begin(), eorder.end(), std::size_t{0});
    std::shuffle(eorder.begin(), eorder.end(), rng);
    GraphDescription raw;
    raw.weights.resize(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) raw.weights[static_cast<std::size_t>(vperm[v])] = g.weight(make_id<VertexId>(v));
    std::vector<Length> lengths;
    for (const auto e : eorder) {
        auto [a, b] = g.ends(make_id<EdgeId>(e));
        int x = vperm[idx(a)], y = vperm[idx(b)];
        if (rng() % 2) std::swap(x, y);
        raw.edges.emplace_back(x, y);
        lengths.push_back(c.lengths[e]);
    }
    for (std::size_t i = 0; i < g.num_legs(); ++i) raw.legs.emplace_back(g.leg_label_at(i), vperm[idx(g.leg_vertex_at(i))]);
    return {validate(raw), lengths, c.extended};
}

/// Splits edge e at a new weight-0 vertex into pieces of lengths a and l(e) - a.
TropicalCurve subdivide(const TropicalCurve& c, std::size_t e, Length a, Length b) {
    auto raw = c.graph.description();
    const int fresh = static_cast<int>(raw.weights.size());
    raw.weights.push_back(0);
    const auto [x, y] = raw.edges[e];
    raw.edges[e] = {x, fresh};
    raw.edges.emplace_back(fresh, y);
    auto lengths = c.lengths;
    lengths[e] = a;
    lengths.push_back(b);
    return {validate(raw), lengths, c.extended};
}

ErrorCode error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::ParseError;
}

} // namespace

TEST(LengthValue, Parsing) {
    EXPECT_EQ(Length::parse("3"), Length(3));
    EXPECT_EQ(Length::parse("3/6"), Length(1, 2));
    EXPECT_EQ(Length::parse("inf"), Length::infinity());
    EXPECT_EQ(Length::parse("1/2").str(), "1/2");
    EXPECT_EQ(Length(4, 2).str(), "2");
    EXPECT_EQ(error_of([] { Length::parse("abc"); }), ErrorCode::BadLength);
    EXPECT_EQ(error_of([] { Length::parse("1/0"); }), ErrorCode::BadLength);
}

TEST(LengthValue, InfinityAbsorbsAndSortsLast) {
    EXPECT_EQ(Length(1) + Length::infinity(), Length::infinity());
    EXPECT_LT(Length(1000000), Length::infinity());
    EXPECT_LT(Length(1, 3), Length(1, 2));
    EXPECT_EQ(Length(1, 3) + Length(1, 6), Length(1, 2));
    EXPECT_EQ(error_of([] { (void)(Length(INT64_MAX) + Length(1)); }), ErrorCode::Overflow);
}

TEST(CheckCurve, LeafEdgesAreInfinite) {
    const auto g = make_graph({1, 0}, {{0, 1}});
    EXPECT_EQ(error_of([&] { curve(g, L({1})); }), ErrorCode::BadLength);
    EXPECT_NO_THROW(curve(g, {Length::infinity()}));
    EXPECT_EQ(error_of([] { curve(theta(), {Length(1), Length::infinity(), Length(2)}); }), ErrorCode::BadLength);
    EXPECT_NO_THROW(curve(theta(), {Length(1), Length::infinity(), Length(2)}, true));
    EXPECT_EQ(error_of([] { curve(theta(), L({1, 0, 2})); }), ErrorCode::BadLength);
}

TEST(Stabilize, MergesBivalentVertex) {
    // w=1, u, w=1 in a path, with u bivalent of weight 0
    const auto c = curve(make_graph({1, 0, 1}, {{0, 1}, {1, 2}}), {Length(2), Length(1, 3)});
    const auto s = stabilize(c);
    EXPECT_EQ(s.graph.num_vertices(), 2u);
    ASSERT_EQ(s.graph.num_edges(), 1u);
    EXPECT_EQ(s.lengths[0], Length(7, 3));
}

TEST(Stabilize, EdgeMergesIntoLeg) {
    const auto c = curve(make_graph({1, 0}, {{0, 1}}, {{1, 1}}), L({5}));
    const auto s = stabilize(c);
    EXPECT_EQ(s.graph.num_vertices(), 1u);
    EXPECT_EQ(s.graph.num_edges(), 0u);
    EXPECT_EQ(s.graph.num_legs(), 1u);
    EXPECT_EQ(s.graph.weight(make_id<VertexId>(0)), 1);
}

TEST(Stabilize, RemovesRationalTails) {
    // theta with a dangling path of two weight-0 vertices
    const auto g = make_graph({0, 0, 0, 0}, {{0, 1}, {0, 1}, {0, 1}, {1, 2}, {2, 3}});
    auto c = curve_with_uniform_lengths(g, Length(2));
    const auto s = stabilize(c);
    EXPECT_TRUE(is_isometric(s, curve(theta(), L({2, 2, 2}))));
    EXPECT_TRUE(is_stable(s.graph));
}

TEST(Stabilize, StableCurveIsFixed) {
    const auto c = curve(theta(), L({1, 2, 3}));
    const auto s = stabilize(c);
    EXPECT_EQ(s.graph, c.graph);
    EXPECT_EQ(s.lengths, c.lengths);
}

TEST(Stabilize, DegenerateSignature) {
    const auto c = curve(loop_vertex(), L({1}));
    EXPECT_EQ(error_of([&] { stabilize(c); }), ErrorCode::DegenerateSignature);
    const auto d = curve(make_graph({0, 0}, {{0, 1}, {1, 1}}), {Length::infinity(), Length(1)});
    EXPECT_EQ(error_of([&] { stabilize(d); }), ErrorCode::DegenerateSignature);
}

TEST(Stabilize, SubdivisionPreservesFiniteTotal) {
    std::mt19937_64 rng(test_seed() + 20);
    int checked = 0;
    for (int trial = 0; trial < 2000 && checked < 300; ++trial) {
        const auto g = random_graph(rng, 4, 6, 1, 3);
        if (!is_stable(g) || !is_hyperbolic_signature(genus(g), static_cast<int>(g.num_legs())) || g.num_edges() == 0) continue;
        ++checked;
        auto c = random_curve(g, rng, 9);
        for (auto& l : c.lengths) l = l + Length(1); // every piece below stays positive
        auto sub = c;
        for (int cuts = 0; cuts < 3; ++cuts) {
            const auto e = std::uniform_int_distribution<std::size_t>(0, sub.lengths.size() - 1)(rng);
            if (sub.lengths[e].is_infinite() || sub.lengths[e] <= Length(1)) continue;
            const Length a(1, 2);
            sub = subdivide(sub, e, a, sub.lengths[e] + Length(-1, 2));
        }
        const auto s = stabilize(sub);
        ASSERT_EQ(finite_total(s), finite_total(c));
        ASSERT_TRUE(is_isometric(s, c));
    }
    EXPECT_GE(checked, 100);
}

TEST(Stabilize, RandomProperties) {
    std::mt19937_64 rng(test_seed() + 21);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const auto g = random_graph(rng, 6, 8, 1, 3);
        if (!is_hyperbolic_signature(genus(g), static_cast<int>(g.num_legs()))) continue;
        ++checked;
        const auto c = random_curve(g, rng, 5);
        const auto s = stabilize(c);
        ASSERT_TRUE(is_stable(s.graph));
        ASSERT_EQ(genus(s.graph), genus(g));
        ASSERT_EQ(s.graph.num_legs(), g.num_legs());
        ASSERT_LE(finite_total(s), finite_total(c));
        for (const auto& l : s.lengths) ASSERT_TRUE(l.is_finite());
        const auto again = stabilize(s);
        ASSERT_EQ(again.graph, s.graph);
        ASSERT_EQ(again.lengths, s.lengths);
        for (int k = 0; k < 3; ++k) ASSERT_TRUE(is_isometric(stabilize(c, &rng), s));
    }
    EXPECT_GE(checked, 1000);
}

TEST(SeparateLegs, Examples) {
    const auto c = curve(single_vertex(0, 3), {});
    const auto sep = separate_legs(c);
    std::set<VertexId> ends;
    for (std::size_t i = 0; i < sep.graph.num_legs(); ++i) ends.insert(sep.graph.leg_vertex_at(i));
    EXPECT_EQ(ends.size(), 3u);
    EXPECT_EQ(sep.graph.leg_vertex(1), make_id<VertexId>(0));
    EXPECT_EQ(sep.lengths, L({1, 1}));
    EXPECT_TRUE(is_isometric(stabilize(sep), c));

    const auto apart = curve(make_graph({0, 0, 0, 0}, {{1, 0}, {1, 2}, {1, 3}}, {{1, 0}, {2, 2}, {3, 3}}), L({1, 2, 3}));
    EXPECT_EQ(separate_legs(apart).graph, apart.graph);
    EXPECT_EQ(separate_legs(apart).lengths, apart.lengths);
}

TEST(SeparateLegs, StabilizesBack) {
    std::mt19937_64 rng(test_seed() + 22);
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = random_graph(rng, 4, 5, 1, 5);
        if (!is_hyperbolic_signature(genus(g), static_cast<int>(g.num_legs()))) continue;
        const auto c = random_curve(g, rng, 4);
        const auto sep = separate_legs(c, Length(3, 2));
        std::set<VertexId> ends;
        for (std::size_t i = 0; i < sep.graph.num_legs(); ++i) ends.insert(sep.graph.leg_vertex_at(i));
        ASSERT_EQ(ends.size(), sep.graph.num_legs());
        ASSERT_TRUE(is_isometric(stabilize(sep), stabilize(c)));
    }
}

TEST(IsIsometric, Examples) {
    EXPECT_TRUE(is_isometric(curve(theta(), L({1, 2, 3})), curve(theta(), L({3, 2, 1}))));
    EXPECT_FALSE(brute_isometric(curve(theta(), L({1, 2, 3})), curve(theta(), L({1, 2, 4}))));
    EXPECT_FALSE(is_isometric(curve(theta(), L({1, 2, 3})), curve(theta(), L({1, 2, 4}))));
    const auto inf = Length::infinity();
    EXPECT_TRUE(is_isometric(curve(theta(), {Length(1), inf, Length(2)}, true),
                             curve(theta(), {Length(2), inf, Length(1)}, true)));
    EXPECT_FALSE(is_isometric(curve(dumbbell(), L({1, 2, 3})), curve(dumbbell(), L({2, 1, 3}))));
    EXPECT_TRUE(is_isometric(curve(dumbbell(), L({1, 2, 3})), curve(dumbbell(), L({3, 2, 1}))));
}

TEST(IsIsometric, AgreesWithBruteForce) {
    std::mt19937_64 rng(test_seed() + 23);
    int positives = 0, checked = 0;
    for (int trial = 0; trial < 6000 && checked < 600; ++trial) {
        const auto g = random_graph(rng, 4, 6, 1, 2);
        if (!is_stable(g) || g.num_edges() > 6) continue;
        ++checked;
        const auto a = random_curve(g, rng, 2);
        const auto b = shuffle_curve(rng() % 2 ? a : random_curve(g, rng, 2), rng);
        const bool brute = brute_isometric(a, b);
        positives += brute ? 1 : 0;
        ASSERT_EQ(is_isometric(a, b), brute);
    }
    EXPECT_GE(checked, 300);
    EXPECT_GE(positives, 100);
}

TEST(FaceContract, Examples) {
    const auto two = face_contract({theta(), L({1, 1, 0})});
    EXPECT_TRUE(is_isomorphic(two.graph, two_loop_vertex()));
    EXPECT_EQ(two.lengths, L({1, 1}));

    const auto same = face_contract({theta(), L({1, 2, 3})});
    EXPECT_EQ(same.graph, theta());
    EXPECT_EQ(same.lengths, L({1, 2, 3}));

    const auto origin = face_contract({theta(), L({0, 0, 0})});
    EXPECT_TRUE(is_isomorphic(origin.graph, single_vertex(2)));

    EXPECT_EQ(error_of([] { face_contract({theta(), L({1, -1, 0})}); }), ErrorCode::BadLength);
}

TEST(Fiber, ThetaExamples) {
    EXPECT_EQ(fiber({theta(), L({1, 2, 3})}).size(), 6u);
    const auto ones = fiber({theta(), L({1, 1, 1})});
    ASSERT_EQ(ones.size(), 1u);
    EXPECT_EQ(ones[0].coords, L({1, 1, 1}));
    const auto face = fiber({theta(), L({1, 1, 0})});
    ASSERT_EQ(face.size(), 3u);
    EXPECT_EQ(face[0].coords, L({0, 1, 1}));
    EXPECT_EQ(face[1].coords, L({1, 0, 1}));
    EXPECT_EQ(face[2].coords, L({1, 1, 0}));
    EXPECT_EQ(fiber({theta(), L({0, 0, 0})}).size(), 1u);
}

TEST(Fiber, RequiresStableBase) {
    EXPECT_EQ(error_of([] { fiber({make_graph({1, 0}, {{0, 1}}), L({1})}); }), ErrorCode::NotStable);
}

TEST(Fiber, MatchesBruteForce) {
    // candidates: every rearrangement of the coordinates, filtered by brute isometry
    std::mt19937_64 rng(test_seed() + 24);
    std::vector<WeightedGraph> bases = enumerate_trivalent(2, 0);
    for (const auto& g : enumerate_trivalent(1, 2)) bases.push_back(g);
    for (const auto& g : enumerate_trivalent(0, 5)) bases.push_back(g);
    for (const auto& base : bases) {
        for (int trial = 0; trial < 15; ++trial) {
            std::vector<Length> coords;
            for (std::size_t e = 0; e < base.num_edges(); ++e) coords.emplace_back(std::uniform_int_distribution<int>(0, 2)(rng));
            const ConePoint p{base, coords};
            const auto target = face_contract(p);
            std::set<std::vector<Length>> expected;
            auto perm = coords;
            std::sort(perm.begin(), perm.end());
            do {
                const auto q = face_contract({base, perm});
                if (brute_isometric(q, target)) expected.insert(perm);
            } while (std::next_permutation(perm.begin(), perm.end()));
            std::set<std::vector<Length>> got;
            for (const auto& q : fiber(p)) got.insert(q.coords);
            ASSERT_EQ(got, expected);
            ASSERT_TRUE(got.contains(coords));
            for (const auto& q : got) ASSERT_EQ(fiber({base, q}), fiber(p));
        }
    }
}

TEST(Fiber, ParallelMatchesSequential) {
    const ConePoint p{dumbbell(), L({2, 1, 2})};
    EXPECT_EQ(fiber(p, 1), fiber(p, 4));
}
