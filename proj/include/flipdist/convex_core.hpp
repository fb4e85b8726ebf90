#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace flipdist {

// Counterclockwise position on the polygon; the spine runs 0 < 1 < ... < n-1.
using VertexId = int;

struct Edge {
    VertexId a = 0;
    VertexId b = 0;

    constexpr Edge() = default;
    constexpr Edge(VertexId u, VertexId v) : a(u < v ? u : v), b(u < v ? v : u) {}

    constexpr auto operator<=>(const Edge&) const = default;
};

constexpr bool crosses(Edge e, Edge f) {
    return (e.a < f.a && f.a < e.b && e.b < f.b) || (f.a < e.a && e.a < f.b && f.b < e.b);
}

constexpr bool is_boundary(Edge e, int n) { return e.b == e.a + 1 || (e.a == 0 && e.b == n - 1); }

// (0, n-1) is a boundary edge but not a spine edge: the cut sits there.
constexpr bool is_spine(Edge e) { return e.b == e.a + 1; }

constexpr bool is_interior(Edge e, int n) {
    return e.a >= 0 && e.b < n && e.a < e.b && !is_boundary(e, n);
}

enum class IssueKind { WrongCount, CrossingPair, NotInterior, Duplicate };

struct TriangulationIssue {
    IssueKind kind;
    Edge first;
    Edge second;

    std::string message() const;
};

// Stores diagonals only, kept sorted. Construction does not validate.
class Triangulation {
public:
    Triangulation() = default;
    Triangulation(int n, std::vector<Edge> diagonals);

    int n() const { return n_; }
    const std::vector<Edge>& diagonals() const { return diagonals_; }
    std::size_t size() const { return diagonals_.size(); }

    bool contains(Edge e) const;
    // Boundary edges count as present.
    bool has_edge(VertexId u, VertexId v) const;

    bool operator==(const Triangulation&) const = default;

private:
    int n_ = 3;
    std::vector<Edge> diagonals_;
};

std::optional<TriangulationIssue> validate(const Triangulation& t);

// The diagonal that replaces e when e is flipped.
Edge opposite_diagonal(const Triangulation& t, Edge e);
Triangulation flip(const Triangulation& t, Edge e);
std::vector<std::pair<Edge, Triangulation>> flip_neighbors(const Triangulation& t);

inline constexpr int kEnumerateCap = 15;
std::vector<Triangulation> enumerate(int n);

std::string canonical_key(const Triangulation& t);

// Faces of the polygon cut by a non-crossing chord set, each as ascending vertex list.
std::vector<std::vector<VertexId>> faces(int n, const std::vector<Edge>& chords);
std::vector<std::array<VertexId, 3>> triangles(const Triangulation& t);

// Completes a non-crossing chord set by fanning every face from its smallest vertex.
Triangulation complete_from_leftmost(int n, std::vector<Edge> chords);
Triangulation fan_triangulation(int n, VertexId apex);

// Uniform over all triangulations of the n-gon (Catalan-weighted apex choice).
inline constexpr int kRandomCap = 35;
Triangulation random_triangulation(int n, std::mt19937_64& rng);

// Sorted neighbour lists including boundary edges, for repeated face queries.
class Adjacency {
public:
    explicit Adjacency(const Triangulation& t);

    const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
    bool adjacent(VertexId u, VertexId v) const;
    // Third vertex of the triangle on e lying inside / outside the interval [a, b].
    // A spine edge only has the outside one. Returns -1 when there is none.
    VertexId apex_inside(Edge e) const;
    VertexId apex_outside(Edge e) const;

private:
    std::vector<std::vector<VertexId>> adj_;
};

}  // namespace flipdist
