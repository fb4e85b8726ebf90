#include "doctest.h"
#include "oracles.hpp"

#include "flipdist/convex_core.hpp"
#include "flipdist/errors.hpp"

#include <map>
#include <random>
#include <set>

using namespace flipdist;

TEST_CASE("crossing predicate") {
    CHECK(crosses(Edge(0, 2), Edge(1, 3)));
    CHECK_FALSE(crosses(Edge(0, 2), Edge(2, 4)));
    CHECK_FALSE(crosses(Edge(1, 4), Edge(2, 3)));
    for (int a = 0; a < 8; ++a) {
        for (int b = a + 1; b < 8; ++b) {
            for (int c = 0; c < 8; ++c) {
                for (int d = c + 1; d < 8; ++d) {
                    Edge e(a, b), f(c, d);
                    CHECK(crosses(e, f) == crosses(f, e));
                    CHECK(crosses(e, f) == oracle::alternate(e, f));
                }
            }
            CHECK_FALSE(crosses(Edge(a, b), Edge(a, b)));
        }
    }
}

TEST_CASE("edge normalisation and classes") {
    Edge e(5, 2);
    CHECK(e.a == 2);
    CHECK(e.b == 5);
    CHECK(is_spine(Edge(3, 4)));
    CHECK_FALSE(is_spine(Edge(0, 6)));
    CHECK(is_boundary(Edge(0, 6), 7));
    CHECK(is_interior(Edge(0, 5), 7));
}

TEST_CASE("validate") {
    CHECK_FALSE(validate(Triangulation(4, {{0, 2}})));
    auto cross = validate(Triangulation(4, {{0, 2}, {1, 3}}));
    REQUIRE(cross);
    CHECK(cross->kind == IssueKind::CrossingPair);
    auto count = validate(Triangulation(5, {{0, 2}}));
    REQUIRE(count);
    CHECK(count->kind == IssueKind::WrongCount);
    auto boundary = validate(Triangulation(5, {{0, 4}, {1, 3}}));
    REQUIRE(boundary);
    CHECK(boundary->kind == IssueKind::NotInterior);
    auto dup = validate(Triangulation(5, {{0, 2}, {0, 2}}));
    REQUIRE(dup);
    CHECK(dup->kind == IssueKind::Duplicate);
    CHECK_FALSE(validate(Triangulation(3, {})));
}

TEST_CASE("flip") {
    CHECK(flip(Triangulation(4, {{1, 3}}), Edge(1, 3)) == Triangulation(4, {{0, 2}}));
    CHECK(flip(Triangulation(5, {{0, 2}, {0, 3}}), Edge(0, 3)) == Triangulation(5, {{0, 2}, {2, 4}}));
    CHECK_THROWS_AS(flip(Triangulation(5, {{0, 2}, {0, 3}}), Edge(1, 3)), NotADiagonal);
}

TEST_CASE("flip is an involution and neighbours are n-3 valid triangulations") {
    for (int n = 4; n <= 8; ++n) {
        for (const auto& t : enumerate(n)) {
            auto nb = flip_neighbors(t);
            CHECK(static_cast<int>(nb.size()) == n - 3);
            for (const auto& [e, u] : nb) {
                CHECK_FALSE(validate(u));
                CHECK_FALSE(u == t);
                Edge g = opposite_diagonal(t, e);
                CHECK(u.contains(g));
                CHECK(flip(u, g) == t);
            }
        }
    }
    CHECK(flip_neighbors(fan_triangulation(5, 2)).size() == 2);
}

TEST_CASE("enumerate matches Catalan and brute force") {
    auto cat = oracle::catalan_table(14);
    for (int n = 3; n <= 12; ++n) {
        CHECK(static_cast<long long>(enumerate(n).size()) == cat[n - 2]);
    }
    for (int n = 3; n <= 8; ++n) {
        auto mine = enumerate(n);
        auto ref = oracle::brute_triangulations(n);
        std::set<std::vector<Edge>> a, b(ref.begin(), ref.end());
        for (const auto& t : mine) {
            CHECK_FALSE(validate(t));
            a.insert(t.diagonals());
        }
        CHECK(a == b);
    }
    CHECK(enumerate(3).size() == 1);
    CHECK(enumerate(3)[0].size() == 0);
    CHECK_THROWS_AS(enumerate(kEnumerateCap + 1), TooLarge);
}

TEST_CASE("canonical keys") {
    Triangulation a(4, {{0, 2}}), b(4, {{1, 3}});
    CHECK(canonical_key(a) == canonical_key(Triangulation(4, {{0, 2}})));
    CHECK(canonical_key(a) != canonical_key(b));
    std::set<std::string> keys;
    for (const auto& t : enumerate(6)) keys.insert(canonical_key(t));
    CHECK(keys.size() == 14);
    // Insertion order does not matter.
    CHECK(canonical_key(Triangulation(6, {{0, 4}, {0, 2}, {0, 3}})) ==
          canonical_key(Triangulation(6, {{0, 2}, {0, 3}, {0, 4}})));
}

TEST_CASE("faces and completion") {
    auto f = faces(6, {Edge(0, 3)});
    REQUIRE(f.size() == 2);
    CHECK(f[0] == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(f[1] == std::vector<VertexId>{0, 3, 4, 5});
    for (const auto& t : enumerate(7)) CHECK(triangles(t).size() == 5);
    auto c = complete_from_leftmost(7, {Edge(2, 5)});
    CHECK_FALSE(validate(c));
    CHECK(c.contains(Edge(2, 5)));
    CHECK(c.contains(Edge(2, 4)));
    CHECK(c.contains(Edge(0, 2)));
}

TEST_CASE("adjacency apex queries") {
    Triangulation t(6, {{0, 2}, {0, 3}, {3, 5}});
    Adjacency adj(t);
    CHECK(adj.apex_outside(Edge(1, 2)) == 0);
    CHECK(adj.apex_outside(Edge(2, 3)) == 0);
    CHECK(adj.apex_outside(Edge(4, 5)) == 3);
    CHECK(adj.apex_inside(Edge(0, 3)) == 2);
    CHECK(adj.apex_inside(Edge(0, 5)) == 3);
    CHECK(adj.apex_inside(Edge(1, 2)) == -1);
}

TEST_CASE("random triangulations are valid and roughly uniform") {
    std::mt19937_64 rng(17);
    auto all = enumerate(6);
    std::map<std::vector<Edge>, int> hits;
    for (int k = 0; k < 14000; ++k) {
        auto t = random_triangulation(6, rng);
        REQUIRE_FALSE(validate(t));
        ++hits[t.diagonals()];
    }
    CHECK(hits.size() == all.size());
    for (auto& [d, c] : hits) {
        CHECK(c > 800);
        CHECK(c < 1200);
    }
    for (int n : {3, 4, 20, kRandomCap}) CHECK_FALSE(validate(random_triangulation(n, rng)));
    CHECK_THROWS_AS(random_triangulation(kRandomCap + 1, rng), TooLarge);
}
