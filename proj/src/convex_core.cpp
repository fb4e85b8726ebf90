#include "flipdist/convex_core.hpp"

#include "flipdist/errors.hpp"

#include <algorithm>
#include <functional>

namespace flipdist {

namespace {

std::string edge_text(Edge e) { return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")"; }

// Neighbours of v (boundary included) read off a sorted diagonal list.
std::vector<VertexId> neighbors_of(const Triangulation& t, VertexId v) {
    const int n = t.n();
    std::vector<VertexId> out{(v + 1) % n, (v + n - 1) % n};
    for (const Edge& e : t.diagonals()) {
        if (e.a == v) out.push_back(e.b);
        else if (e.b == v) out.push_back(e.a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::string TriangulationIssue::message() const {
    switch (kind) {
    case IssueKind::WrongCount: return "WrongCount";
    case IssueKind::CrossingPair: return "CrossingPair " + edge_text(first) + " " + edge_text(second);
    case IssueKind::NotInterior: return "NotInterior " + edge_text(first);
    case IssueKind::Duplicate: return "Duplicate " + edge_text(first);
    }
    return "unknown";
}

Triangulation::Triangulation(int n, std::vector<Edge> diagonals) : n_(n), diagonals_(std::move(diagonals)) {
    std::sort(diagonals_.begin(), diagonals_.end());
}

bool Triangulation::contains(Edge e) const {
    return std::binary_search(diagonals_.begin(), diagonals_.end(), e);
}

bool Triangulation::has_edge(VertexId u, VertexId v) const {
    Edge e(u, v);
    return is_boundary(e, n_) || contains(e);
}

std::optional<TriangulationIssue> validate(const Triangulation& t) {
    const int n = t.n();
    const auto& d = t.diagonals();
    for (const Edge& e : d) {
        if (!is_interior(e, n)) return TriangulationIssue{IssueKind::NotInterior, e, e};
    }
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d[i] == d[i - 1]) return TriangulationIssue{IssueKind::Duplicate, d[i], d[i]};
    }
    // Laminar check: by (a asc, b desc) every chord must nest inside the open ones.
    std::vector<Edge> order(d);
    std::sort(order.begin(), order.end(), [](Edge x, Edge y) { return x.a != y.a ? x.a < y.a : x.b > y.b; });
    std::vector<Edge> open;
    for (const Edge& e : order) {
        while (!open.empty() && open.back().b <= e.a) open.pop_back();
        if (!open.empty() && e.b > open.back().b) {
            return TriangulationIssue{IssueKind::CrossingPair, open.back(), e};
        }
        open.push_back(e);
    }
    if (n < 3 || static_cast<int>(d.size()) != n - 3) return TriangulationIssue{IssueKind::WrongCount, {}, {}};
    return std::nullopt;
}

Edge opposite_diagonal(const Triangulation& t, Edge e) {
    if (!t.contains(e)) throw NotADiagonal(edge_text(e));
    auto na = neighbors_of(t, e.a);
    auto nb = neighbors_of(t, e.b);
    std::vector<VertexId> common;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
    VertexId c = -1, d = -1;
    for (VertexId v : common) {
        if (v > e.a && v < e.b) c = v;
        else d = v;
    }
    if (c < 0 || d < 0) throw NotADiagonal("no quadrilateral around " + edge_text(e));
    return Edge(c, d);
}

Triangulation flip(const Triangulation& t, Edge e) {
    Edge g = opposite_diagonal(t, e);
    std::vector<Edge> diags = t.diagonals();
    *std::find(diags.begin(), diags.end(), e) = g;
    return Triangulation(t.n(), std::move(diags));
}

std::vector<std::pair<Edge, Triangulation>> flip_neighbors(const Triangulation& t) {
    std::vector<std::pair<Edge, Triangulation>> out;
    out.reserve(t.size());
    for (const Edge& e : t.diagonals()) out.emplace_back(e, flip(t, e));
    return out;
}

std::vector<Triangulation> enumerate(int n) {
    if (n < 3) throw PreconditionViolated("enumerate needs n >= 3");
    if (n > kEnumerateCap) throw TooLarge("enumerate supports n <= " + std::to_string(kEnumerateCap));
    // Choose the apex over chord (a, b) and recurse on both sides.
    std::vector<std::vector<Edge>> result;
    std::vector<Edge> current;
    std::function<void(std::vector<Edge>&)> expand = [&](std::vector<Edge>& pending) {
        if (pending.empty()) {
            result.push_back(current);
            return;
        }
        Edge e = pending.back();
        pending.pop_back();
        for (VertexId c = e.a + 1; c < e.b; ++c) {
            std::size_t mark = current.size();
            std::size_t pmark = pending.size();
            if (c - e.a >= 2) {
                current.emplace_back(e.a, c);
                pending.emplace_back(e.a, c);
            }
            if (e.b - c >= 2) {
                current.emplace_back(c, e.b);
                pending.emplace_back(c, e.b);
            }
            expand(pending);
            current.resize(mark);
            pending.resize(pmark);
        }
        pending.push_back(e);
    };
    std::vector<Edge> pending{Edge(0, n - 1)};
    expand(pending);
    std::vector<Triangulation> out;
    out.reserve(result.size());
    for (auto& d : result) out.emplace_back(n, std::move(d));
    std::sort(out.begin(), out.end(),
              [](const Triangulation& x, const Triangulation& y) { return x.diagonals() < y.diagonals(); });
    return out;
}

std::string canonical_key(const Triangulation& t) {
    const int n = t.n();
    const int width = n <= 256 ? 1 : (n <= 65536 ? 2 : 4);
    std::string key;
    key.reserve(4 + 2 * width * t.size());
    auto put = [&](std::uint32_t v, int bytes) {
        for (int k = bytes - 1; k >= 0; --k) key.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
    };
    put(static_cast<std::uint32_t>(n), 4);
    for (const Edge& e : t.diagonals()) {
        put(static_cast<std::uint32_t>(e.a), width);
        put(static_cast<std::uint32_t>(e.b), width);
    }
    return key;
}

std::vector<std::vector<VertexId>> faces(int n, const std::vector<Edge>& chords) {
    std::vector<std::vector<VertexId>> up(n);
    for (const Edge& e : chords) up[e.a].push_back(e.b);
    for (auto& u : up) std::sort(u.begin(), u.end());

    std::vector<std::vector<VertexId>> out;
    std::vector<Edge> roots{Edge(0, n - 1)};
    roots.insert(roots.end(), chords.begin(), chords.end());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (const Edge& root : roots) {
        // Walk below the chord: jump along the longest chord that stays inside it.
        std::vector<VertexId> face{root.a};
        VertexId v = root.a;
        while (v != root.b) {
            const auto& cand = up[v];
            auto it = std::upper_bound(cand.begin(), cand.end(), root.b);
            VertexId next = v + 1;
            if (it != cand.begin()) {
                VertexId w = *std::prev(it);
                if (!(v == root.a && w == root.b) && w > next) next = w;
                else if (v == root.a && w == root.b && it - cand.begin() >= 2) {
                    VertexId w2 = *std::prev(it, 2);
                    if (w2 > next) next = w2;
                }
            }
            face.push_back(next);
            v = next;
        }
        out.push_back(std::move(face));
    }
    return out;
}

std::vector<std::array<VertexId, 3>> triangles(const Triangulation& t) {
    std::vector<std::array<VertexId, 3>> out;
    for (const auto& f : faces(t.n(), t.diagonals())) {
        if (f.size() == 3) out.push_back({f[0], f[1], f[2]});
    }
    return out;
}

Triangulation complete_from_leftmost(int n, std::vector<Edge> chords) {
    std::sort(chords.begin(), chords.end());
    chords.erase(std::unique(chords.begin(), chords.end()), chords.end());
    std::vector<Edge> diags;
    for (const Edge& e : chords) {
        if (is_interior(e, n)) diags.push_back(e);
    }
    std::vector<Edge> added;
    for (const auto& f : faces(n, diags)) {
        for (std::size_t k = 2; k + 1 < f.size(); ++k) added.emplace_back(f[0], f[k]);
    }
    diags.insert(diags.end(), added.begin(), added.end());
    return Triangulation(n, std::move(diags));
}

Triangulation fan_triangulation(int n, VertexId apex) {
    std::vector<Edge> d;
    for (VertexId v = 0; v < n; ++v) {
        Edge e(apex, v);
        if (v != apex && is_interior(e, n)) d.push_back(e);
    }
    return Triangulation(n, std::move(d));
}

Triangulation random_triangulation(int n, std::mt19937_64& rng) {
    if (n < 3) throw PreconditionViolated("random_triangulation needs n >= 3");
    if (n > kRandomCap) throw TooLarge("random_triangulation supports n <= " + std::to_string(kRandomCap));
    // cat[k] counts triangulations of a (k+2)-gon.
    std::vector<std::uint64_t> cat(n, 0);
    cat[0] = 1;
    for (int k = 1; k < n; ++k) {
        for (int i = 0; i < k; ++i) cat[k] += cat[i] * cat[k - 1 - i];
    }
    std::vector<Edge> d;
    std::vector<std::pair<VertexId, VertexId>> todo{{0, n - 1}};
    while (!todo.empty()) {
        auto [a, b] = todo.back();
        todo.pop_back();
        if (b - a < 2) continue;
        const int k = b - a - 1;
        std::uniform_int_distribution<std::uint64_t> pick(0, cat[k] - 1);
        std::uint64_t r = pick(rng);
        VertexId c = a + 1;
        for (;; ++c) {
            std::uint64_t w = cat[c - a - 1] * cat[b - c - 1];
            if (r < w) break;
            r -= w;
        }
        if (c - a >= 2) d.emplace_back(a, c);
        if (b - c >= 2) d.emplace_back(c, b);
        todo.emplace_back(a, c);
        todo.emplace_back(c, b);
    }
    return Triangulation(n, std::move(d));
}

Adjacency::Adjacency(const Triangulation& t) : adj_(t.n()) {
    const int n = t.n();
    for (VertexId v = 0; v < n; ++v) {
        adj_[v].push_back((v + 1) % n);
        adj_[v].push_back((v + n - 1) % n);
    }
    for (const Edge& e : t.diagonals()) {
        adj_[e.a].push_back(e.b);
        adj_[e.b].push_back(e.a);
    }
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
}

bool Adjacency::adjacent(VertexId u, VertexId v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

VertexId Adjacency::apex_inside(Edge e) const {
    for (VertexId c : adj_[e.a]) {
        if (c > e.a && c < e.b && adjacent(c, e.b)) return c;
    }
    return -1;
}

VertexId Adjacency::apex_outside(Edge e) const {
    for (VertexId c : adj_[e.a]) {
        if ((c < e.a || c > e.b) && adjacent(c, e.b)) return c;
    }
    return -1;
}

}  // namespace flipdist
