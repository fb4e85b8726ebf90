#pragma once

// Reference implementations for tests. They deliberately avoid the library's
// flip, enumerate and search code.

#include "flipdist/convex_core.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <vector>

namespace oracle {

using flipdist::Edge;

inline std::vector<long long> catalan_table(int upto) {
    std::vector<long long> c(upto + 1, 0);
    c[0] = 1;
    for (int k = 1; k <= upto; ++k) {
        for (int i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
    }
    return c;
}

inline bool alternate(Edge e, Edge f) {
    auto inside = [](int x, int lo, int hi) { return lo < x && x < hi; };
    bool fa = inside(f.a, e.a, e.b), fb = inside(f.b, e.a, e.b);
    bool shared = e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
    return !shared && fa != fb;
}

// All maximal non-crossing diagonal sets, by brute force over subsets of size n-3.
inline std::vector<std::vector<Edge>> brute_triangulations(int n) {
    std::vector<Edge> all;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 2; b < n; ++b) {
            if (a == 0 && b == n - 1) continue;
            all.emplace_back(a, b);
        }
    }
    std::vector<std::vector<Edge>> out;
    std::vector<Edge> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == n - 3) {
            out.push_back(pick);
            return;
        }
        for (std::size_t i = from; i < all.size(); ++i) {
            bool ok = true;
            for (const Edge& p : pick) ok = ok && !alternate(p, all[i]);
            if (!ok) continue;
            pick.push_back(all[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline int symmetric_difference(const std::vector<Edge>& x, const std::vector<Edge>& y) {
    std::vector<Edge> d;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(d));
    return static_cast<int>(d.size());
}

// All-pairs distance table of the flip graph, with adjacency = differ in one diagonal.
struct FlipGraph {
    std::vector<std::vector<Edge>> nodes;
    std::vector<std::vector<int>> adj;
    std::vector<std::vector<int>> dist;

    explicit FlipGraph(int n) : nodes(brute_triangulations(n)) {
        const int k = static_cast<int>(nodes.size());
        adj.assign(k, {});
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (symmetric_difference(nodes[i], nodes[j]) == 2) {
                    adj[i].push_back(j);
                    adj[j].push_back(i);
                }
            }
        }
        dist.assign(k, std::vector<int>(k, -1));
        for (int s = 0; s < k; ++s) {
            std::queue<int> q;
            q.push(s);
            dist[s][s] = 0;
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int w : adj[v]) {
                    if (dist[s][w] < 0) {
                        dist[s][w] = dist[s][v] + 1;
                        q.push(w);
                    }
                }
            }
        }
    }

    int index_of(const std::vector<Edge>& d) const {
        auto it = std::find(nodes.begin(), nodes.end(), d);
        return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
    }

    int diameter() const {
        int best = 0;
        for (const auto& row : dist) best = std::max(best, *std::max_element(row.begin(), row.end()));
        return best;
    }

    // Shortest walk from s to t that removes diagonal e at least once (layered on a flag).
    int forced_flip_distance(int s, int t, Edge e) const {
        const int k = static_cast<int>(nodes.size());
        std::vector<int> d(2 * k, -1);
        std::queue<int> q;
        d[2 * s] = 0;
        q.push(2 * s);
        auto has = [&](int v) { return std::binary_search(nodes[v].begin(), nodes[v].end(), e); };
        while (!q.empty()) {
            int st = q.front();
            q.pop();
            int v = st / 2, flag = st % 2;
            for (int w : adj[v]) {
                int nf = flag | (has(v) && !has(w) ? 1 : 0);
                int ns = 2 * w + nf;
                if (d[ns] < 0) {
                    d[ns] = d[st] + 1;
                    q.push(ns);
                }
            }
        }
        return d[2 * t + 1];
    }

    // Shortest walk that never removes any diagonal of keep.
    int avoiding_distance(int s, int t, const std::vector<Edge>& keep) const {
        const int k = static_cast<int>(nodes.size());
        std::vector<int> d(k, -1);
        std::queue<int> q;
        d[s] = 0;
        q.push(s);
        auto loses = [&](int v, int w) {
            for (const Edge& e : keep) {
                bool in_v = std::binary_search(nodes[v].begin(), nodes[v].end(), e);
                bool in_w = std::binary_search(nodes[w].begin(), nodes[w].end(), e);
                if (in_v && !in_w) return true;
            }
            return false;
        };
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v]) {
                if (d[w] < 0 && !loses(v, w)) {
                    d[w] = d[v] + 1;
                    q.push(w);
                }
            }
        }
        return d[t];
    }

    // Shortest walk that never removes e.
    int avoiding_distance(int s, int t, Edge e) const {
        const int k = static_cast<int>(nodes.size());
        std::vector<int> d(k, -1);
        std::queue<int> q;
        d[s] = 0;
        q.push(s);
        auto has = [&](int v) { return std::binary_search(nodes[v].begin(), nodes[v].end(), e); };
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v]) {
                if (has(v) && !has(w)) continue;
                if (d[w] < 0) {
                    d[w] = d[v] + 1;
                    q.push(w);
                }
            }
        }
        return d[t];
    }
};

// Maximum induced acyclic subset size by trying every subset (k <= ~16).
inline int brute_max_acyclic(int k, const std::vector<std::pair<int, int>>& edges) {
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        // Repeatedly strip vertices without an in-edge inside the set.
        std::uint32_t rest = mask;
        bool progress = true;
        while (rest && progress) {
            progress = false;
            for (int v = 0; v < k; ++v) {
                if (!(rest >> v & 1)) continue;
                bool has_in = false;
                for (auto [a, b] : edges) has_in = has_in || (b == v && (rest >> a & 1));
                if (!has_in) {
                    rest &= ~(1u << v);
                    progress = true;
                }
            }
        }
        if (rest == 0) best = size;
    }
    return best;
}

}  // namespace oracle
