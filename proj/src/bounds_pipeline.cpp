#include "flipdist/bounds_pipeline.hpp"

#include "flipdist/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace flipdist {

namespace {

void check_ac(int gamma_size, int ac) {
    if (ac < 0 || ac > gamma_size) throw PreconditionViolated("need 0 <= ac <= |Gamma|");
}

void append(std::vector<Edge>& steps, const FlipSequence& part) {
    steps.insert(steps.end(), part.steps.begin(), part.steps.end());
}

std::vector<VertexId> with_spine(const BlowupInstance& inst, int i, std::initializer_list<VertexId> extra) {
    std::vector<VertexId> region(extra);
    for (VertexId v = inst.left(i); v <= inst.right(i); ++v) region.push_back(v);
    std::sort(region.begin(), region.end());
    region.erase(std::unique(region.begin(), region.end()), region.end());
    return region;
}

// Fan of pair i after re-fanning its sub-polygon to the spine's left endpoint.
std::vector<Edge> middle_fan(const BlowupInstance& inst, int i) {
    std::vector<Edge> out;
    const int n = inst.blown_n();
    for (VertexId v = inst.left(i) + 2; v <= inst.right(i); ++v) {
        Edge e(inst.left(i), v);
        if (is_interior(e, n)) out.push_back(e);
    }
    return out;
}

bool non_crossing(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), [](Edge x, Edge y) { return x.a != y.a ? x.a < y.a : x.b > y.b; });
    std::vector<Edge> open;
    for (const Edge& e : edges) {
        while (!open.empty() && open.back().b <= e.a) open.pop_back();
        if (!open.empty() && e.b > open.back().b) return false;
        open.push_back(e);
    }
    return true;
}

}  // namespace

std::int64_t upper_bound_value(int n, int gamma_size, int ac, std::int64_t beta) {
    check_ac(gamma_size, ac);
    return beta * (2LL * gamma_size - ac) + 1LL * n * (2LL * n - 5);
}

std::int64_t lower_bound_value(int n, int gamma_size, int ac, std::int64_t beta) {
    check_ac(gamma_size, ac);
    return beta * (2LL * gamma_size - ac) - 3LL * n * n;
}

std::int64_t theorem_beta(int n) {
    if (n < 3) throw PreconditionViolated("theorem_beta needs n >= 3");
    const std::int64_t nn = n;
    const std::int64_t beta = 6 * (nn * nn + nn);
    if (!(beta - 3 * nn * nn > 2 * nn * nn - 5 * nn)) throw std::logic_error("separation inequality fails");
    return beta;
}

BoundReport bound_report(int n, int gamma_size, int ac, std::int64_t beta) {
    return BoundReport{upper_bound_value(n, gamma_size, ac, beta), lower_bound_value(n, gamma_size, ac, beta), beta,
                       n, gamma_size, ac};
}

FlipSequence construct_upper_sequence(const BlowupInstance& inst, const AcyclicResult& s) {
    return construct_upper_sequence(inst, s.subset);
}

FlipSequence construct_upper_sequence(const BlowupInstance& inst, const std::vector<int>& s) {
    const int g = inst.gamma();
    const int n = inst.base_n();
    const int big = inst.blown_n();
    std::vector<char> chosen(g, 0);
    for (int i : s) {
        if (i < 0 || i >= g || chosen[i]) throw NotASubsetOfGamma(std::to_string(i));
        chosen[i] = 1;
    }
    ConflictGraph h = conflict_graph(inst);
    if (!is_acyclic(h, s)) throw NotAcyclic("subset induces a cycle");
    const std::size_t setup_cap = 2 * static_cast<std::size_t>(std::max(0, n - 3));

    FlipSequence out{inst.blown_t, {}};
    Triangulation cur = inst.blown_t;
    Triangulation far = inst.blown_tp;
    std::vector<Edge> far_steps;

    for (int i = 0; i < g; ++i) {
        if (chosen[i]) continue;
        auto near_part = fan_sequence(cur, with_spine(inst, i, {inst.apex_t(i)}), inst.left(i));
        auto far_part = fan_sequence(far, with_spine(inst, i, {inst.apex_tp(i)}), inst.left(i));
        cur = replay(near_part);
        far = replay(far_part);
        append(out.steps, near_part);
        far_steps.insert(far_steps.end(), far_part.steps.begin(), far_part.steps.end());
    }

    // Current fan of every pair; these stay put through every setup.
    enum class Stage { Initial, Target, Middle };
    std::vector<Stage> stage(g);
    for (int i = 0; i < g; ++i) stage[i] = chosen[i] ? Stage::Initial : Stage::Middle;
    auto protected_edges = [&]() {
        std::vector<Edge> keep;
        for (int j = 0; j < g; ++j) {
            const auto& f = stage[j] == Stage::Initial ? inst.fan_t[j]
                            : stage[j] == Stage::Target ? inst.fan_tp[j]
                                                        : middle_fan(inst, j);
            keep.insert(keep.end(), f.begin(), f.end());
        }
        return keep;
    };

    for (int i : source_order(h, s)) {
        const VertexId a = inst.apex_t(i), ap = inst.apex_tp(i);
        if (a != ap) {
            auto region = with_spine(inst, i, {a, ap});
            const int k = static_cast<int>(region.size());
            const int pos = static_cast<int>(std::find(region.begin(), region.end(), ap) - region.begin());
            std::vector<Edge> need = protected_edges();
            need.emplace_back(ap, region[(pos + k - 1) % k]);
            need.emplace_back(ap, region[(pos + 1) % k]);
            need.emplace_back(a, inst.left(i));
            need.emplace_back(a, inst.right(i));
            std::vector<Edge> chords;
            for (const Edge& e : need) {
                if (is_interior(e, big)) chords.push_back(e);
            }
            std::sort(chords.begin(), chords.end());
            chords.erase(std::unique(chords.begin(), chords.end()), chords.end());
            if (!non_crossing(chords)) throw std::logic_error("upper construction: supporting edges are crossed");
            Triangulation mid = complete_from_leftmost(big, chords);
            auto setup = two_approx_sequence(cur, mid);
            if (setup.steps.size() > setup_cap) throw std::logic_error("upper construction: setup exceeds 2(n-3)");
            append(out.steps, setup);
            auto direct = fan_sequence(mid, region, ap);
            if (direct.steps.size() > static_cast<std::size_t>(inst.beta) + 1) {
                throw std::logic_error("upper construction: direct phase exceeds beta+1");
            }
            append(out.steps, direct);
            cur = replay(direct);
        }
        stage[i] = Stage::Target;
    }

    auto cleanup = two_approx_sequence(cur, far);
    if (cleanup.steps.size() > setup_cap) throw std::logic_error("upper construction: cleanup exceeds 2(n-3)");
    append(out.steps, cleanup);
    append(out.steps, reversed(FlipSequence{inst.blown_tp, far_steps}));
    return out;
}

SequenceAnalysis analyze_sequence(const BlowupInstance& inst, const FlipSequence& f, std::optional<int> exact_ac) {
    if (inst.beta < 1) throw PreconditionViolated("analysis needs beta >= 1");
    if (!(f.start == inst.blown_t)) throw InvalidSequence("does not start at the blown-up initial triangulation");
    if (auto issue = validate_sequence(f, inst.blown_tp)) throw InvalidSequence(issue->message());
    const int g = inst.gamma();
    const int len = static_cast<int>(f.steps.size());

    // Edge -> (pair, is target fan).
    std::map<Edge, std::vector<std::pair<int, bool>>> owner;
    for (int i = 0; i < g; ++i) {
        for (const Edge& e : inst.fan_t[i]) owner[e].emplace_back(i, false);
        for (const Edge& e : inst.fan_tp[i]) owner[e].emplace_back(i, true);
    }
    std::vector<int> initial(g, 0), target(g, 0);
    std::set<Edge> present(inst.blown_t.diagonals().begin(), inst.blown_t.diagonals().end());
    auto count = [&](const Edge& e, int delta) {
        auto it = owner.find(e);
        if (it == owner.end()) return;
        for (auto [i, tgt] : it->second) (tgt ? target[i] : initial[i]) += delta;
    };
    for (const Edge& e : present) count(e, 1);

    SequenceAnalysis out;
    out.sequence_length = len;
    out.gone.assign(g, len + 1);
    out.direct.assign(g, false);
    std::vector<char> seen_target(g, 0);
    Triangulation cur = inst.blown_t;
    for (int t = 0; t <= len; ++t) {
        for (int i = 0; i < g; ++i) {
            if (out.gone[i] <= len) continue;
            if (target[i] > 0) seen_target[i] = 1;
            if (initial[i] == 0) {
                out.gone[i] = t;
                out.direct[i] = seen_target[i];
            }
        }
        if (t == len) break;
        Edge e = f.steps[t];
        Edge nu = opposite_diagonal(cur, e);
        cur = flip(cur, e);
        count(e, -1);
        count(nu, 1);
    }
    for (int i = 0; i < g; ++i) {
        if (out.never_gone(i)) out.direct[i] = true;
        (out.direct[i] ? out.direct_count : out.indirect_count) += 1;
    }
    for (auto [i, j] : conflict_graph(inst).edges) {
        if (out.direct[i] && out.direct[j] && out.gone[i] >= out.gone[j]) out.ordering_violations.emplace_back(i, j);
    }
    if (exact_ac) out.direct_bound_holds = out.direct_count <= *exact_ac;
    return out;
}

TheoremInstance emit_theorem_instance(const Max2SatInstance& phi) {
    ReductionOutput red = build_reduction(phi);
    TheoremInstance out;
    out.base_n = red.t1.n();
    out.gamma_size = static_cast<int>(red.pairs.size());
    out.beta = theorem_beta(out.base_n);
    out.target_ac = phi.w * (phi.m() + 1) + phi.k_prime.value_or(0);
    BlowupInstance inst = blow_up(red.t1, red.t2, static_cast<int>(out.beta));
    out.t1 = std::move(inst.blown_t);
    out.t2 = std::move(inst.blown_tp);
    out.k = upper_bound_value(out.base_n, out.gamma_size, out.target_ac, out.beta);
    return out;
}

}  // namespace flipdist
