#include "flipdist/blowup_conflict.hpp"

#include "flipdist/acyclic_solver.hpp"
#include "flipdist/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace flipdist {

std::string_view to_string(PairType t) {
    switch (t) {
    case PairType::Above: return "above";
    case PairType::Below: return "below";
    case PairType::Crossing: return "crossing";
    case PairType::MirroredOrOther: return "other";
    }
    return "other";
}

std::optional<PairType> parse_pair_type(std::string_view s) {
    for (PairType t : {PairType::Above, PairType::Below, PairType::Crossing, PairType::MirroredOrOther}) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

std::vector<SpinePair> spine_pairs(const Triangulation& t1, const Triangulation& t2) {
    if (t1.n() != t2.n()) throw SizeMismatch("spine_pairs");
    const int n = t1.n();
    Adjacency a1(t1), a2(t2);
    std::vector<SpinePair> out;
    for (VertexId i = 0; i + 1 < n; ++i) {
        Edge e(i, i + 1);
        VertexId c1 = a1.apex_outside(e), c2 = a2.apex_outside(e);
        // An apex next to the edge would make a second spine edge.
        auto single = [&](VertexId c) { return c >= 0 && c != i - 1 && c != i + 2; };
        if (single(c1) && single(c2)) out.push_back(SpinePair{e, c1, c2, static_cast<int>(out.size())});
    }
    return out;
}

BlowupInstance blow_up(const Triangulation& t1, const Triangulation& t2, int beta) {
    if (beta < 0) throw PreconditionViolated("beta must be >= 0");
    BlowupInstance inst;
    inst.base_t = t1;
    inst.base_tp = t2;
    inst.beta = beta;
    inst.pairs = spine_pairs(t1, t2);
    const int n = t1.n();
    std::vector<char> split(n, 0);
    for (const auto& p : inst.pairs) split[p.spine_edge.a] = 1;
    inst.vertex_map.resize(n);
    VertexId next = 0;
    for (VertexId v = 0; v < n; ++v) {
        inst.vertex_map[v] = next;
        next += 1 + (split[v] ? beta : 0);
    }
    const int blown = next;
    auto relabel = [&](const Triangulation& t) {
        std::vector<Edge> d;
        d.reserve(t.size() + static_cast<std::size_t>(beta) * inst.pairs.size());
        for (const Edge& e : t.diagonals()) d.emplace_back(inst.vertex_map[e.a], inst.vertex_map[e.b]);
        return d;
    };
    std::vector<Edge> d1 = relabel(t1), d2 = relabel(t2);
    for (int i = 0; i < inst.gamma(); ++i) {
        std::vector<VertexId> fresh;
        std::vector<Edge> f1, f2;
        for (int k = 1; k <= beta; ++k) {
            VertexId v = inst.left(i) + k;
            fresh.push_back(v);
            f1.emplace_back(inst.apex_t(i), v);
            f2.emplace_back(inst.apex_tp(i), v);
        }
        d1.insert(d1.end(), f1.begin(), f1.end());
        d2.insert(d2.end(), f2.begin(), f2.end());
        inst.new_vertices.push_back(std::move(fresh));
        inst.fan_t.push_back(std::move(f1));
        inst.fan_tp.push_back(std::move(f2));
    }
    inst.blown_t = Triangulation(blown, std::move(d1));
    inst.blown_tp = Triangulation(blown, std::move(d2));
    if (validate(inst.blown_t) || validate(inst.blown_tp)) throw std::logic_error("blow_up produced an invalid triangulation");
    return inst;
}

PairType classify_pair(const SpinePair& p) {
    const VertexId v1 = p.spine_edge.a, v3 = p.spine_edge.b, v2 = p.apex_t, v2p = p.apex_tp;
    if (v2 < v2p && v2p < v1) return PairType::Above;
    if (v3 < v2 && v2 < v2p) return PairType::Below;
    if (v2p < v1 && v3 < v2) return PairType::Crossing;
    return PairType::MirroredOrOther;
}

bool ConflictGraph::has_edge(int i, int j) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

ConflictGraph conflict_graph(const std::vector<SpinePair>& pairs) {
    // One inserted vertex per pair is enough: fans cross all-or-nothing.
    const int k = static_cast<int>(pairs.size());
    std::vector<VertexId> mid(k);
    for (int i = 0; i < k; ++i) mid[i] = 2 * pairs[i].spine_edge.a + 1;
    // Doubling every label and using the odd slot keeps the original order.
    auto at = [](VertexId v) { return 2 * v; };
    ConflictGraph h{k, {}};
    for (int i = 0; i < k; ++i) {
        Edge fi(at(pairs[i].apex_t), mid[i]);
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            if (crosses(fi, Edge(at(pairs[j].apex_tp), mid[j]))) h.edges.emplace_back(i, j);
        }
    }
    return h;
}

ConflictGraph conflict_graph(const BlowupInstance& inst) { return conflict_graph(inst.pairs); }

FanCrossing fan_crossing(const BlowupInstance& inst, int i, int j) {
    FanCrossing r{false, true};
    for (const Edge& e : inst.fan_t[i]) {
        for (const Edge& f : inst.fan_tp[j]) {
            bool c = crosses(e, f);
            r.any = r.any || c;
            r.all = r.all && c;
        }
    }
    if (inst.fan_t[i].empty() || inst.fan_tp[j].empty()) r.all = false;
    return r;
}

std::optional<PremiseViolation> check_acyclic_premises(const ConflictGraph& h, const std::vector<PairType>& types,
                                                       const std::vector<int>& subset) {
    std::vector<char> in(h.vertex_count, 0);
    for (int v : subset) {
        if (v < 0 || v >= h.vertex_count) throw PreconditionViolated("subset index out of range");
        in[v] = 1;
        if (types.at(v) == PairType::MirroredOrOther) return PremiseViolation{v, v, "untyped pair"};
    }
    auto rank = [](PairType t) { return t == PairType::Above ? 0 : (t == PairType::Crossing ? 1 : 2); };
    for (auto [i, j] : h.edges) {
        if (!in[i] || !in[j]) continue;
        if (rank(types[i]) > rank(types[j])) {
            return PremiseViolation{i, j,
                                    std::string(to_string(types[i])) + " -> " + std::string(to_string(types[j]))};
        }
    }
    if (!is_acyclic(h, subset)) throw std::logic_error("premises hold but the subset has a cycle");
    return std::nullopt;
}

}  // namespace flipdist
