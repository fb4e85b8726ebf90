#include "doctest.h"
#include "oracles.hpp"

#include "flipdist/errors.hpp"
#include "flipdist/flip_distance.hpp"

#include <random>

using namespace flipdist;

namespace {

Triangulation walked_triangulation(int n, std::mt19937_64& rng) {
    Triangulation t = fan_triangulation(n, 0);
    for (int k = 0; k < 4 * n; ++k) {
        std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
        t = flip(t, t.diagonals()[pick(rng)]);
    }
    return t;
}

}  // namespace

TEST_CASE("validate_sequence") {
    Triangulation a(4, {{1, 3}}), b(4, {{0, 2}});
    CHECK_FALSE(validate_sequence(FlipSequence{a, {}}, a));
    CHECK_FALSE(validate_sequence(FlipSequence{a, {Edge(1, 3)}}, b));
    auto wrong = validate_sequence(FlipSequence{a, {Edge(1, 3)}}, a);
    REQUIRE(wrong);
    CHECK(wrong->kind == SequenceIssueKind::WrongTarget);
    auto illegal = validate_sequence(FlipSequence{a, {Edge(1, 3), Edge(1, 3)}}, a);
    REQUIRE(illegal);
    CHECK(illegal->kind == SequenceIssueKind::IllegalStep);
    CHECK(illegal->index == 1);
}

TEST_CASE("reversed walks back") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        auto t1 = walked_triangulation(9, rng), t2 = walked_triangulation(9, rng);
        auto seq = two_approx_sequence(t1, t2);
        auto back = reversed(seq);
        CHECK(back.start == t2);
        CHECK_FALSE(validate_sequence(back, t1));
    }
}

TEST_CASE("happy_split") {
    auto same = fan_triangulation(6, 0);
    auto parts = happy_split(same, same);
    CHECK(parts.size() == 4);
    for (const auto& p : parts) CHECK(p.vertices.size() == 3);

    Triangulation t1(6, {{0, 2}, {0, 3}, {3, 5}}), t2(6, {{1, 3}, {0, 3}, {0, 4}});
    parts = happy_split(t1, t2);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].vertices == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(parts[1].vertices == std::vector<VertexId>{0, 3, 4, 5});

    Triangulation f0 = fan_triangulation(6, 0), zig(6, {{1, 3}, {1, 5}, {3, 5}});
    parts = happy_split(f0, zig);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].first == f0);
    CHECK(parts[0].second == zig);
}

TEST_CASE("exact distance examples") {
    auto f0 = fan_triangulation(6, 0);
    CHECK(exact_distance(f0, f0).distance == 0);
    CHECK(exact_distance(Triangulation(5, {{0, 2}, {0, 3}}), Triangulation(5, {{0, 2}, {2, 4}})).distance == 1);
    auto r = exact_distance(f0, fan_triangulation(6, 1));
    CHECK(r.distance == 3);
    CHECK_FALSE(validate_sequence(r.witness, fan_triangulation(6, 1)));
}

TEST_CASE("exact distance matches the flip-graph oracle") {
    for (int n = 4; n <= 8; ++n) {
        oracle::FlipGraph g(n);
        const int k = static_cast<int>(g.nodes.size());
        const int stride = n <= 7 ? 1 : 7;
        for (int i = 0; i < k; i += stride) {
            for (int j = 0; j < k; j += stride) {
                Triangulation a(n, g.nodes[i]), b(n, g.nodes[j]);
                auto r = exact_distance(a, b);
                CHECK(r.distance == g.dist[i][j]);
                CHECK_FALSE(validate_sequence(r.witness, b));
            }
        }
    }
}

TEST_CASE("happy split components sum to the distance") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 40; ++k) {
        auto a = walked_triangulation(9, rng), b = walked_triangulation(9, rng);
        int sum = 0;
        for (const auto& sub : happy_split(a, b)) sum += exact_distance(sub.first, sub.second).distance;
        CHECK(sum == exact_distance(a, b).distance);
    }
}

TEST_CASE("witnesses are deterministic") {
    std::mt19937_64 rng(8);
    auto a = walked_triangulation(11, rng), b = walked_triangulation(11, rng);
    auto r1 = exact_distance(a, b), r2 = exact_distance(a, b);
    CHECK(r1.witness.steps == r2.witness.steps);
}

TEST_CASE("budget is enforced") {
    auto a = fan_triangulation(14, 0), b = fan_triangulation(14, 7);
    CHECK_THROWS_AS(exact_distance(a, b, 50), BudgetExceeded);
}

TEST_CASE("fourteen vertices are supported") {
    std::mt19937_64 rng(21);
    auto a = walked_triangulation(14, rng), b = walked_triangulation(14, rng);
    auto r = exact_distance(a, b);
    CHECK(static_cast<std::size_t>(r.distance) >= difference_size(a, b));
    CHECK_FALSE(validate_sequence(r.witness, b));
}

TEST_CASE("diameter") {
    CHECK(diameter(4) == 1);
    int prev = 0;
    for (int n = 4; n <= 9; ++n) {
        int d = diameter(n);
        CHECK(d == oracle::FlipGraph(n).diameter());
        CHECK(d <= 2 * (n - 3));
        CHECK(d >= prev);
        prev = d;
    }
    CHECK_THROWS_AS(diameter(kDiameterCap + 1), TooLarge);
}

TEST_CASE("fan_sequence") {
    auto f0 = fan_triangulation(5, 0);
    CHECK(fan_sequence(f0, {0, 1, 2, 3, 4}, 0).steps.empty());
    // (0,2) already touches the apex, so one flip suffices.
    auto s = fan_sequence(f0, {0, 1, 2, 3, 4}, 2);
    CHECK(s.steps.size() == 1);
    CHECK(replay(s) == Triangulation(5, {{0, 2}, {2, 4}}));
    auto s6 = fan_sequence(fan_triangulation(6, 0), {0, 1, 2, 3, 4, 5}, 3);
    CHECK(s6.steps.size() <= 3);
    CHECK(replay(s6) == fan_triangulation(6, 3));
    CHECK_THROWS_AS(fan_sequence(f0, {1, 2, 4}, 2), NotASubpolygon);
    CHECK_THROWS_AS(fan_sequence(f0, {0, 1, 2}, 4), NotASubpolygon);

    // Sub-polygon bounded by diagonals: only its interior changes.
    Triangulation t(8, {{0, 2}, {0, 6}, {2, 6}, {2, 4}, {2, 5}});
    auto part = fan_sequence(t, {2, 3, 4, 5, 6}, 3);
    CHECK(part.steps.size() == 2);
    auto out = replay(part);
    CHECK(out.contains(Edge(0, 2)));
    CHECK(out.contains(Edge(0, 6)));
    CHECK(out.contains(Edge(3, 5)));
    CHECK(out.contains(Edge(3, 6)));

    std::mt19937_64 rng(9);
    for (int k = 0; k < 30; ++k) {
        auto t9 = walked_triangulation(9, rng);
        int apex = static_cast<int>(rng() % 9);
        std::size_t expect = 0;
        for (const Edge& e : t9.diagonals()) expect += (e.a != apex && e.b != apex);
        auto seq = fan_sequence(t9, {0, 1, 2, 3, 4, 5, 6, 7, 8}, apex);
        CHECK(seq.steps.size() == expect);
        CHECK(replay(seq) == fan_triangulation(9, apex));
    }
}

TEST_CASE("two_approx_sequence bounds") {
    auto f0 = fan_triangulation(7, 0);
    CHECK(two_approx_sequence(f0, f0).steps.empty());
    auto one = flip(f0, Edge(0, 3));
    CHECK(two_approx_sequence(f0, one).steps.size() == 1);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 100; ++k) {
        auto a = walked_triangulation(10, rng), b = walked_triangulation(10, rng);
        auto seq = two_approx_sequence(a, b);
        CHECK(seq.steps.size() <= 2 * difference_size(a, b));
        CHECK_FALSE(validate_sequence(seq, b));
    }
}

TEST_CASE("metric sandwich and greedy optimality") {
    for (int n = 4; n <= 7; ++n) {
        oracle::FlipGraph g(n);
        const int k = static_cast<int>(g.nodes.size());
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                Triangulation a(n, g.nodes[i]), b(n, g.nodes[j]);
                auto lo = difference_size(a, b);
                auto d = static_cast<std::size_t>(g.dist[i][j]);
                auto up = two_approx_sequence(a, b).steps.size();
                CHECK(lo <= d);
                CHECK(d <= up);
                CHECK(up <= 2 * lo);
                for (const auto& [e, t] : flip_neighbors(a)) {
                    if (difference_size(t, b) + 1 == lo) {
                        CHECK(g.dist[g.index_of(t.diagonals())][j] == g.dist[i][j] - 1);
                    }
                }
            }
        }
    }
}
