#include "flipdist/acyclic_solver.hpp"

#include "flipdist/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace flipdist {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

class Search {
public:
    explicit Search(const ConflictGraph& h) : n_(h.vertex_count), succ_(n_, 0), pred_(n_, 0) {
        for (auto [i, j] : h.edges) {
            succ_[i] |= bit(j);
            pred_[j] |= bit(i);
        }
    }

    // Largest acyclic set containing `in` and avoiding `out`; stops at `enough`.
    int run(Mask in, Mask out, int floor, int enough) {
        best_ = floor;
        best_set_ = 0;
        found_ = false;
        enough_ = enough;
        Mask all = n_ == 64 ? ~Mask{0} : bit(n_) - 1;
        if (!acyclic(in)) return -1;
        branch(in, all & ~in & ~out);
        return found_ ? best_ : -1;
    }

    Mask best_set() const { return best_set_; }

private:
    bool closes_cycle(Mask keep, int u) const {
        Mask reach = succ_[u] & keep, frontier = reach;
        while (frontier) {
            int x = std::countr_zero(frontier);
            frontier &= frontier - 1;
            Mask fresh = succ_[x] & keep & ~reach;
            reach |= fresh;
            frontier |= fresh;
        }
        return (reach & pred_[u]) != 0;
    }

    bool acyclic(Mask s) const {
        Mask rest = s;
        bool progress = true;
        while (rest && progress) {
            progress = false;
            for (Mask m = rest; m; m &= m - 1) {
                int v = std::countr_zero(m);
                if ((pred_[v] & rest) == 0) {
                    rest &= ~bit(v);
                    progress = true;
                }
            }
        }
        return rest == 0;
    }

    // Disjoint 2-cycles inside the undecided set each cost one vertex.
    int packing_bound(Mask open) const {
        int cost = 0;
        Mask left = open;
        while (left) {
            int v = std::countr_zero(left);
            left &= ~bit(v);
            Mask mutual = succ_[v] & pred_[v] & left;
            if (mutual) {
                left &= ~bit(std::countr_zero(mutual));
                ++cost;
            }
        }
        return cost;
    }

    void branch(Mask keep, Mask open) {
        if (found_ && best_ >= enough_) return;
        bool changed = true;
        while (changed) {
            changed = false;
            for (Mask m = open; m; m &= m - 1) {
                int u = std::countr_zero(m);
                Mask live = keep | open;
                if ((pred_[u] & live) == 0 || (succ_[u] & live) == 0) {
                    keep |= bit(u);
                    open &= ~bit(u);
                    changed = true;
                } else if (closes_cycle(keep, u)) {
                    open &= ~bit(u);
                    changed = true;
                }
            }
        }
        int upper = std::popcount(keep) + std::popcount(open) - packing_bound(open);
        if (upper <= best_) return;
        if (!open) {
            best_ = std::popcount(keep);
            best_set_ = keep;
            found_ = true;
            return;
        }
        int pick = -1, degree = -1;
        Mask live = keep | open;
        for (Mask m = open; m; m &= m - 1) {
            int v = std::countr_zero(m);
            int d = std::popcount((succ_[v] | pred_[v]) & live);
            if (d > degree) {
                degree = d;
                pick = v;
            }
        }
        branch(keep | bit(pick), open & ~bit(pick));
        branch(keep, open & ~bit(pick));
    }

    int n_;
    std::vector<Mask> succ_, pred_;
    int best_ = 0;
    Mask best_set_ = 0;
    bool found_ = false;
    int enough_ = 0;
};

std::vector<int> to_list(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

}  // namespace

std::vector<int> source_order(const ConflictGraph& h, const std::vector<int>& s) {
    std::vector<char> in(h.vertex_count, 0);
    for (int v : s) in[v] = 1;
    std::vector<int> indeg(h.vertex_count, 0);
    std::vector<std::vector<int>> succ(h.vertex_count);
    for (auto [i, j] : h.edges) {
        if (in[i] && in[j]) {
            ++indeg[j];
            succ[i].push_back(j);
        }
    }
    std::vector<int> order;
    std::vector<char> done(h.vertex_count, 0);
    const std::size_t want = std::count(in.begin(), in.end(), 1);
    while (order.size() < want) {
        int next = -1;
        for (int v = 0; v < h.vertex_count; ++v) {
            if (in[v] && !done[v] && indeg[v] == 0) {
                next = v;
                break;
            }
        }
        if (next < 0) return {};
        done[next] = 1;
        order.push_back(next);
        for (int w : succ[next]) --indeg[w];
    }
    return order;
}

bool is_acyclic(const ConflictGraph& h, const std::vector<int>& s) {
    return s.empty() || !source_order(h, s).empty();
}

AcyclicResult max_acyclic_subset(const ConflictGraph& h) {
    if (h.vertex_count > kExactAcyclicCap) {
        throw TooLargeForExact(std::to_string(h.vertex_count) + " vertices, cap " +
                               std::to_string(kExactAcyclicCap));
    }
    if (h.vertex_count == 0) return AcyclicResult{{}, 0, true};
    Search search(h);
    const int opt = search.run(0, 0, 0, h.vertex_count + 1);
    // Fix vertices in index order, keeping each one if an optimum still exists.
    Mask in = 0, out = 0;
    for (int v = 0; v < h.vertex_count; ++v) {
        if (search.run(in | bit(v), out, opt - 1, opt) == opt) in |= bit(v);
        else out |= bit(v);
    }
    return AcyclicResult{to_list(in), opt, true};
}

int max_acyclic_size(const ConflictGraph& h) {
    if (h.vertex_count > kExactAcyclicCap) {
        throw TooLargeForExact(std::to_string(h.vertex_count) + " vertices, cap " +
                               std::to_string(kExactAcyclicCap));
    }
    if (h.vertex_count == 0) return 0;
    return Search(h).run(0, 0, 0, h.vertex_count + 1);
}

AcyclicResult heuristic_acyclic(const ConflictGraph& h) {
    const int k = h.vertex_count;
    std::vector<std::vector<int>> succ(k), pred(k);
    for (auto [i, j] : h.edges) {
        succ[i].push_back(j);
        pred[j].push_back(i);
    }
    std::vector<char> alive(k, 1), taken(k, 0);
    int remaining = k;
    auto degree = [&](const std::vector<int>& nb) {
        int d = 0;
        for (int w : nb) d += alive[w];
        return d;
    };
    // Peel sources and sinks; when stuck drop the vertex with the largest in*out.
    while (remaining > 0) {
        bool peeled = false;
        for (int v = 0; v < k; ++v) {
            if (alive[v] && (degree(pred[v]) == 0 || degree(succ[v]) == 0)) {
                alive[v] = 0;
                taken[v] = 1;
                --remaining;
                peeled = true;
            }
        }
        if (peeled) continue;
        int drop = -1;
        long long score = -1;
        for (int v = 0; v < k; ++v) {
            if (!alive[v]) continue;
            long long s = 1LL * degree(pred[v]) * degree(succ[v]);
            if (s > score) {
                score = s;
                drop = v;
            }
        }
        alive[drop] = 0;
        --remaining;
    }
    std::vector<int> chosen;
    for (int v = 0; v < k; ++v) {
        if (taken[v]) chosen.push_back(v);
    }
    for (int v = 0; v < k; ++v) {
        if (taken[v]) continue;
        std::vector<int> trial = chosen;
        trial.insert(std::upper_bound(trial.begin(), trial.end(), v), v);
        if (is_acyclic(h, trial)) {
            chosen = std::move(trial);
            taken[v] = 1;
        }
    }
    const int size = static_cast<int>(chosen.size());
    return AcyclicResult{std::move(chosen), size, false};
}

}  // namespace flipdist
