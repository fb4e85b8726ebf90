#include "flipdist/flip_distance.hpp"

#include "flipdist/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace flipdist {

namespace {

// Search states are byte strings of sorted (a, b) pairs; n <= 64 so one byte each.
using Key = std::string;

Key pack(const Triangulation& t) {
    Key k;
    k.reserve(2 * t.size());
    for (const Edge& e : t.diagonals()) {
        k.push_back(static_cast<char>(e.a));
        k.push_back(static_cast<char>(e.b));
    }
    return k;
}

struct Move {
    Edge removed;
    Edge added;
    Key next;
};

// Neighbours in sorted-diagonal order.
std::vector<Move> packed_neighbors(int n, const Key& k) {
    const std::size_t m = k.size() / 2;
    std::vector<Edge> d(m);
    std::vector<std::uint64_t> adj(n, 0);
    for (int v = 0; v < n; ++v) {
        adj[v] |= std::uint64_t{1} << ((v + 1) % n);
        adj[v] |= std::uint64_t{1} << ((v + n - 1) % n);
    }
    for (std::size_t i = 0; i < m; ++i) {
        d[i] = Edge(static_cast<unsigned char>(k[2 * i]), static_cast<unsigned char>(k[2 * i + 1]));
        adj[d[i].a] |= std::uint64_t{1} << d[i].b;
        adj[d[i].b] |= std::uint64_t{1} << d[i].a;
    }
    std::vector<Move> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Edge e = d[i];
        std::uint64_t common = adj[e.a] & adj[e.b];
        std::uint64_t inside = ((std::uint64_t{1} << e.b) - 1) & ~((std::uint64_t{2} << e.a) - 1);
        int c = std::countr_zero(common & inside);
        int dd = std::countr_zero(common & ~inside);
        Edge g(c, dd);
        std::vector<Edge> nd;
        nd.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) nd.push_back(d[j]);
        }
        nd.insert(std::upper_bound(nd.begin(), nd.end(), g), g);
        Key next;
        next.reserve(2 * m);
        for (const Edge& x : nd) {
            next.push_back(static_cast<char>(x.a));
            next.push_back(static_cast<char>(x.b));
        }
        out.push_back(Move{e, g, std::move(next)});
    }
    return out;
}

struct Side {
    std::unordered_map<Key, int> index;
    std::vector<Key> keys;
    std::vector<int> parent;
    std::vector<int> depth;
    std::vector<Edge> via;
    std::vector<int> frontier;

    int add(Key k, int par, Edge e, int dep) {
        int id = static_cast<int>(keys.size());
        index.emplace(k, id);
        keys.push_back(std::move(k));
        parent.push_back(par);
        via.push_back(e);
        depth.push_back(dep);
        return id;
    }
};

// Bidirectional BFS on one component; returns the removed diagonal per step.
std::vector<Edge> component_path(const Triangulation& s, const Triangulation& t, std::size_t budget) {
    const int n = s.n();
    if (n > kExactComponentCap) {
        throw TooLarge("exact_distance handles components of at most " + std::to_string(kExactComponentCap) +
                       " vertices");
    }
    Key ks = pack(s), kt = pack(t);
    if (ks == kt) return {};
    Side fwd, bwd;
    fwd.frontier.push_back(fwd.add(ks, -1, {}, 0));
    bwd.frontier.push_back(bwd.add(kt, -1, {}, 0));

    while (!fwd.frontier.empty() && !bwd.frontier.empty()) {
        const bool forward = fwd.frontier.size() <= bwd.frontier.size();
        Side& me = forward ? fwd : bwd;
        Side& other = forward ? bwd : fwd;
        std::vector<int> next;
        // (total, key, my id, other id)
        std::optional<std::tuple<int, Key, int, int>> best;
        for (int v : me.frontier) {
            const Key cur = me.keys[v];
            for (Move& mv : packed_neighbors(n, cur)) {
                if (me.index.count(mv.next)) continue;
                // Backward nodes store the diagonal to flip to move toward the target.
                Edge via = forward ? mv.removed : mv.added;
                int id = me.add(mv.next, v, via, me.depth[v] + 1);
                next.push_back(id);
                auto hit = other.index.find(me.keys[id]);
                if (hit != other.index.end()) {
                    int total = me.depth[id] + other.depth[hit->second];
                    std::tuple<int, Key, int, int> cand{total, me.keys[id], id, hit->second};
                    if (!best || cand < *best) best = cand;
                }
                if (fwd.keys.size() + bwd.keys.size() > budget) {
                    throw BudgetExceeded("more than " + std::to_string(budget) + " states");
                }
            }
        }
        me.frontier = std::move(next);
        if (best) {
            int fid = forward ? std::get<2>(*best) : std::get<3>(*best);
            int bid = forward ? std::get<3>(*best) : std::get<2>(*best);
            std::vector<Edge> path;
            for (int v = fid; fwd.parent[v] >= 0; v = fwd.parent[v]) path.push_back(fwd.via[v]);
            std::reverse(path.begin(), path.end());
            for (int v = bid; bwd.parent[v] >= 0; v = bwd.parent[v]) path.push_back(bwd.via[v]);
            return path;
        }
    }
    throw std::logic_error("flip graph disconnected");
}

}  // namespace

std::string SequenceIssue::message() const {
    if (kind == SequenceIssueKind::IllegalStep) return "IllegalStep " + std::to_string(index);
    return "WrongTarget";
}

std::optional<SequenceIssue> validate_sequence(const FlipSequence& f, const Triangulation& target) {
    if (validate(f.start)) return SequenceIssue{SequenceIssueKind::IllegalStep, 0};
    Triangulation cur = f.start;
    for (std::size_t i = 0; i < f.steps.size(); ++i) {
        if (!cur.contains(f.steps[i])) return SequenceIssue{SequenceIssueKind::IllegalStep, i};
        cur = flip(cur, f.steps[i]);
    }
    if (!(cur == target)) return SequenceIssue{SequenceIssueKind::WrongTarget, f.steps.size()};
    return std::nullopt;
}

Triangulation replay(const FlipSequence& f) {
    Triangulation cur = f.start;
    for (const Edge& e : f.steps) cur = flip(cur, e);
    return cur;
}

FlipSequence reversed(const FlipSequence& f) {
    Triangulation cur = f.start;
    std::vector<Edge> added;
    added.reserve(f.steps.size());
    for (const Edge& e : f.steps) {
        Edge g = opposite_diagonal(cur, e);
        cur = flip(cur, e);
        added.push_back(g);
    }
    std::reverse(added.begin(), added.end());
    return FlipSequence{cur, std::move(added)};
}

std::size_t difference_size(const Triangulation& t1, const Triangulation& t2) {
    std::size_t k = 0;
    for (const Edge& e : t1.diagonals()) k += t2.contains(e) ? 0 : 1;
    return k;
}

std::vector<SubInstance> happy_split(const Triangulation& t1, const Triangulation& t2) {
    if (t1.n() != t2.n()) throw SizeMismatch("happy_split");
    std::vector<Edge> common;
    std::set_intersection(t1.diagonals().begin(), t1.diagonals().end(), t2.diagonals().begin(),
                          t2.diagonals().end(), std::back_inserter(common));
    std::vector<SubInstance> out;
    for (auto& face : faces(t1.n(), common)) {
        auto local = [&](const Triangulation& t) {
            std::vector<Edge> d;
            for (const Edge& e : t.diagonals()) {
                auto ia = std::lower_bound(face.begin(), face.end(), e.a);
                auto ib = std::lower_bound(face.begin(), face.end(), e.b);
                if (ia == face.end() || *ia != e.a || ib == face.end() || *ib != e.b) continue;
                Edge le(static_cast<int>(ia - face.begin()), static_cast<int>(ib - face.begin()));
                if (is_interior(le, static_cast<int>(face.size()))) d.push_back(le);
            }
            return Triangulation(static_cast<int>(face.size()), std::move(d));
        };
        SubInstance sub{face, local(t1), local(t2)};
        out.push_back(std::move(sub));
    }
    return out;
}

DistanceResult exact_distance(const Triangulation& t1, const Triangulation& t2, std::size_t budget) {
    if (t1.n() != t2.n()) throw SizeMismatch("exact_distance");
    DistanceResult result{0, FlipSequence{t1, {}}};
    for (const SubInstance& sub : happy_split(t1, t2)) {
        for (const Edge& e : component_path(sub.first, sub.second, budget)) {
            result.witness.steps.emplace_back(sub.vertices[e.a], sub.vertices[e.b]);
        }
    }
    result.distance = static_cast<int>(result.witness.steps.size());
    return result;
}

int diameter(int n) {
    if (n > kDiameterCap) throw TooLarge("diameter supports n <= " + std::to_string(kDiameterCap));
    auto all = enumerate(n);
    const int count = static_cast<int>(all.size());
    std::unordered_map<Key, int> index;
    std::vector<Key> keys;
    for (const auto& t : all) {
        index.emplace(pack(t), static_cast<int>(keys.size()));
        keys.push_back(pack(t));
    }
    std::vector<std::vector<int>> graph(count);
    for (int i = 0; i < count; ++i) {
        for (const Move& mv : packed_neighbors(n, keys[i])) graph[i].push_back(index.at(mv.next));
    }
    int best = 0;
    std::vector<int> dist(count), queue(count);
    for (int s = 0; s < count; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        int head = 0, tail = 0;
        queue[tail++] = s;
        dist[s] = 0;
        while (head < tail) {
            int v = queue[head++];
            for (int w : graph[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue[tail++] = w;
                }
            }
        }
        best = std::max(best, dist[queue[tail - 1]]);
    }
    return best;
}

FlipSequence fan_sequence(const Triangulation& t, std::vector<VertexId> region, VertexId apex) {
    const int n = t.n();
    std::sort(region.begin(), region.end());
    region.erase(std::unique(region.begin(), region.end()), region.end());
    const int k = static_cast<int>(region.size());
    if (k < 3 || region.front() < 0 || region.back() >= n) throw NotASubpolygon("region too small or out of range");
    if (!std::binary_search(region.begin(), region.end(), apex)) throw NotASubpolygon("apex outside region");
    std::vector<char> in_region(n, 0);
    for (VertexId v : region) in_region[v] = 1;
    std::vector<Edge> rim;
    for (int i = 0; i < k; ++i) {
        Edge e(region[i], region[(i + 1) % k]);
        if (!t.has_edge(e.a, e.b)) throw NotASubpolygon("missing rim edge");
        rim.push_back(e);
    }
    std::sort(rim.begin(), rim.end());

    FlipSequence seq{t, {}};
    Triangulation cur = t;
    while (true) {
        Adjacency adj(cur);
        std::optional<Edge> pick;
        bool pending = false;
        for (const Edge& e : cur.diagonals()) {
            if (!in_region[e.a] || !in_region[e.b] || std::binary_search(rim.begin(), rim.end(), e)) continue;
            if (e.a == apex || e.b == apex) continue;
            pending = true;
            if (adj.adjacent(apex, e.a) && adj.adjacent(apex, e.b)) {
                pick = e;
                break;
            }
        }
        if (!pending) break;
        if (!pick) throw std::logic_error("fan_sequence: no flippable diagonal facing the apex");
        seq.steps.push_back(*pick);
        cur = flip(cur, *pick);
    }
    return seq;
}

FlipSequence two_approx_sequence(const Triangulation& t1, const Triangulation& t2) {
    if (t1.n() != t2.n()) throw SizeMismatch("two_approx_sequence");
    FlipSequence out{t1, {}};
    Triangulation cur = t1;
    for (const SubInstance& sub : happy_split(t1, t2)) {
        const int k = static_cast<int>(sub.vertices.size());
        if (sub.first.size() == 0) continue;
        int best = -1;
        std::size_t best_cost = 0;
        for (int p = 0; p < k; ++p) {
            std::size_t cost = 0;
            for (const Edge& e : sub.first.diagonals()) cost += (e.a != p && e.b != p);
            for (const Edge& e : sub.second.diagonals()) cost += (e.a != p && e.b != p);
            if (best < 0 || cost < best_cost) {
                best = p;
                best_cost = cost;
            }
        }
        VertexId apex = sub.vertices[best];
        FlipSequence down = fan_sequence(cur, sub.vertices, apex);
        FlipSequence up = reversed(fan_sequence(t2, sub.vertices, apex));
        for (const Edge& e : down.steps) cur = flip(cur, e);
        for (const Edge& e : up.steps) cur = flip(cur, e);
        out.steps.insert(out.steps.end(), down.steps.begin(), down.steps.end());
        out.steps.insert(out.steps.end(), up.steps.begin(), up.steps.end());
    }
    return out;
}

}  // namespace flipdist
