#include "flipdist/hardness_reduction.hpp"

#include "flipdist/acyclic_solver.hpp"
#include "flipdist/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace flipdist {

std::string InstanceIssue::message() const {
    switch (kind) {
    case InstanceIssueKind::NotMonotone: return "NotMonotone clause " + std::to_string(first);
    case InstanceIssueKind::NotLaminar:
        return "NotLaminar clauses " + std::to_string(first) + " " + std::to_string(second);
    case InstanceIssueKind::BadClause: return "BadClause " + std::to_string(first);
    }
    return "unknown";
}

std::optional<InstanceIssue> validate_instance(const Max2SatInstance& phi) {
    if (phi.w < 1) return InstanceIssue{InstanceIssueKind::BadClause, -1, -1};
    for (int k = 0; k < phi.m(); ++k) {
        const Clause& c = phi.clauses[k];
        if (c.i() < 1 || c.j() > phi.w || c.i() >= c.j()) return InstanceIssue{InstanceIssueKind::BadClause, k, -1};
    }
    for (int k = 0; k < phi.m(); ++k) {
        const Clause& c = phi.clauses[k];
        bool want = c.side == Side::Negative;
        if (c.first.negated != want || c.second.negated != want) {
            return InstanceIssue{InstanceIssueKind::NotMonotone, k, -1};
        }
    }
    for (int a = 0; a < phi.m(); ++a) {
        for (int b = 0; b < phi.m(); ++b) {
            const Clause &x = phi.clauses[a], &y = phi.clauses[b];
            if (a != b && x.side == y.side && x.i() < y.i() && y.i() < x.j() && x.j() < y.j()) {
                return InstanceIssue{InstanceIssueKind::NotLaminar, std::min(a, b), std::max(a, b)};
            }
        }
    }
    if (phi.k_prime && (*phi.k_prime < 0 || *phi.k_prime > phi.m())) {
        return InstanceIssue{InstanceIssueKind::BadClause, -1, -1};
    }
    return std::nullopt;
}

bool clause_satisfied(const Clause& c, const std::vector<bool>& assignment) {
    auto value = [&](const Literal& l) { return assignment[l.var - 1] != l.negated; };
    return value(c.first) || value(c.second);
}

int satisfied_count(const Max2SatInstance& phi, const std::vector<bool>& assignment) {
    int s = 0;
    for (const Clause& c : phi.clauses) s += clause_satisfied(c, assignment);
    return s;
}

std::vector<bool> best_assignment(const Max2SatInstance& phi) {
    if (phi.w > kBruteForceVarCap) throw TooLarge("max2sat_bruteforce supports w <= " + std::to_string(kBruteForceVarCap));
    std::vector<bool> best(phi.w, false), cur(phi.w, false);
    int best_count = -1;
    for (std::uint32_t bits = 0; bits < (1u << phi.w); ++bits) {
        for (int v = 0; v < phi.w; ++v) cur[v] = (bits >> v) & 1;
        int s = satisfied_count(phi, cur);
        if (s > best_count) {
            best_count = s;
            best = cur;
        }
    }
    return best;
}

int max2sat_bruteforce(const Max2SatInstance& phi) { return satisfied_count(phi, best_assignment(phi)); }

std::string Role::label() const {
    switch (kind) {
    case RoleKind::X: return "x" + std::to_string(variable) + "#" + std::to_string(copy);
    case RoleKind::XBar: return "~x" + std::to_string(variable) + "#" + std::to_string(copy);
    case RoleKind::C1: return "C1[" + std::to_string(clause) + "]";
    case RoleKind::C2: return "C2[" + std::to_string(clause) + "]";
    case RoleKind::NC1: return "~C1[" + std::to_string(clause) + "]";
    case RoleKind::NC2: return "~C2[" + std::to_string(clause) + "]";
    }
    return "?";
}

std::optional<Role> Role::parse(const std::string& label, const Max2SatInstance& phi) {
    try {
        bool neg = !label.empty() && label[0] == '~';
        std::string body = neg ? label.substr(1) : label;
        if (!body.empty() && body[0] == 'x') {
            auto hash = body.find('#');
            if (hash == std::string::npos) return std::nullopt;
            Role r{neg ? RoleKind::XBar : RoleKind::X, std::stoi(body.substr(1, hash - 1)), std::stoi(body.substr(hash + 1)), -1};
            if (r.variable < 1 || r.variable > phi.w || r.copy < 0 || r.copy > phi.m()) return std::nullopt;
            if (r.label() != label) return std::nullopt;
            return r;
        }
        if (body.size() >= 5 && body[0] == 'C' && body.back() == ']') {
            int which = body[1] - '0';
            int k = std::stoi(body.substr(3, body.size() - 4));
            if (k < 0 || k >= phi.m() || (which != 1 && which != 2)) return std::nullopt;
            const Clause& c = phi.clauses[k];
            RoleKind kind = neg ? (which == 1 ? RoleKind::NC1 : RoleKind::NC2) : (which == 1 ? RoleKind::C1 : RoleKind::C2);
            Role r{kind, which == 1 ? c.i() : c.j(), 0, k};
            if (r.label() != label) return std::nullopt;
            return r;
        }
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

namespace {

struct Gap {
    VertexId left;
    Role role;
};

// Literal a role commits to: (variable, value).
std::pair<int, bool> requirement(const Role& r) {
    switch (r.kind) {
    case RoleKind::X:
    case RoleKind::C1:
    case RoleKind::C2: return {r.variable, true};
    default: return {r.variable, false};
    }
}

bool incompatible(const Role& a, const Role& b) {
    auto ra = requirement(a), rb = requirement(b);
    return ra.first == rb.first && ra.second != rb.second;
}

bool is_clause_role(const Role& r) { return r.kind != RoleKind::X && r.kind != RoleKind::XBar; }

PairType designed_type(RoleKind k) {
    switch (k) {
    case RoleKind::X:
    case RoleKind::C2: return PairType::Above;
    case RoleKind::XBar:
    case RoleKind::NC1: return PairType::Below;
    case RoleKind::C1:
    case RoleKind::NC2: return PairType::Crossing;
    }
    return PairType::MirroredOrOther;
}

}  // namespace

ReductionOutput build_reduction(const Max2SatInstance& phi) {
    if (auto issue = validate_instance(phi)) throw ValidationError(issue->message());
    const int w = phi.w, m = phi.m();
    std::vector<VertexId> A(w + 2), Ap(w + 2), B(w + 2), Bp(w + 2);
    std::vector<VertexId> q(m), p(m), a1(m), Y(m);
    std::vector<Gap> gaps;
    auto clauses_where = [&](Side side, auto pred) {
        std::vector<int> ks;
        for (int k = 0; k < m; ++k) {
            if (phi.clauses[k].side == side && pred(phi.clauses[k])) ks.push_back(k);
        }
        return ks;
    };
    VertexId cur = 0;
    for (int v = 1; v <= w; ++v) {
        A[v] = cur;
        // Clauses ending at v sit nearest first; clauses starting at v outermost first.
        auto inner_first = [&](std::vector<int> ks) {
            std::sort(ks.begin(), ks.end(), [&](int x, int y) {
                return std::make_pair(-phi.clauses[x].i(), -x) < std::make_pair(-phi.clauses[y].i(), -y);
            });
            return ks;
        };
        auto outer_first = [&](std::vector<int> ks) {
            std::sort(ks.begin(), ks.end(), [&](int x, int y) {
                return std::make_pair(-phi.clauses[x].j(), x) < std::make_pair(-phi.clauses[y].j(), y);
            });
            return ks;
        };
        for (int k : inner_first(clauses_where(Side::Negative, [&](const Clause& c) { return c.j() == v; }))) {
            gaps.push_back(Gap{cur, Role{RoleKind::NC2, v, 0, k}});
            q[k] = ++cur;
        }
        for (int k : outer_first(clauses_where(Side::Negative, [&](const Clause& c) { return c.i() == v; }))) {
            gaps.push_back(Gap{cur, Role{RoleKind::NC1, v, 0, k}});
            p[k] = ++cur;
        }
        for (int r = 0; r <= m; ++r) gaps.push_back(Gap{cur++, Role{RoleKind::XBar, v, r, -1}});
        Ap[v] = cur;
        cur += 2;  // filler ear vertex
        B[v] = cur;
        for (int r = 0; r <= m; ++r) gaps.push_back(Gap{cur++, Role{RoleKind::X, v, r, -1}});
        for (int k : inner_first(clauses_where(Side::Positive, [&](const Clause& c) { return c.j() == v; }))) {
            a1[k] = cur;
            gaps.push_back(Gap{cur++, Role{RoleKind::C2, v, 0, k}});
        }
        for (int k : outer_first(clauses_where(Side::Positive, [&](const Clause& c) { return c.i() == v; }))) {
            Y[k] = cur;
            gaps.push_back(Gap{cur++, Role{RoleKind::C1, v, 0, k}});
        }
        Bp[v] = cur;
    }
    const int n = cur + 1;

    std::vector<SpinePair> designed;
    std::vector<Edge> c1, c2;
    for (const Gap& g : gaps) {
        const Role& r = g.role;
        VertexId at = 0, atp = 0;
        switch (r.kind) {
        case RoleKind::XBar: at = B[r.variable], atp = Bp[r.variable]; break;
        case RoleKind::X: at = A[r.variable], atp = Ap[r.variable]; break;
        case RoleKind::C1: at = a1[r.clause], atp = Ap[phi.clauses[r.clause].i()]; break;
        case RoleKind::C2: at = Y[r.clause], atp = Ap[phi.clauses[r.clause].j()]; break;
        case RoleKind::NC1: at = B[phi.clauses[r.clause].i()], atp = q[r.clause]; break;
        case RoleKind::NC2: at = B[phi.clauses[r.clause].j()], atp = p[r.clause]; break;
        }
        designed.push_back(SpinePair{Edge(g.left, g.left + 1), at, atp, static_cast<int>(designed.size())});
        c1.emplace_back(at, g.left);
        c1.emplace_back(at, g.left + 1);
        c2.emplace_back(atp, g.left);
        c2.emplace_back(atp, g.left + 1);
    }
    for (int v = 1; v <= w; ++v) c1.emplace_back(Ap[v], B[v]);

    ReductionOutput out;
    out.t1 = complete_from_leftmost(n, c1);
    out.t2 = complete_from_leftmost(n, c2);
    if (validate(out.t1) || validate(out.t2)) throw std::logic_error("reduction layout produced crossing chords");
    out.pairs = spine_pairs(out.t1, out.t2);
    bool same = out.pairs.size() == designed.size();
    for (std::size_t i = 0; same && i < designed.size(); ++i) {
        same = out.pairs[i].spine_edge == designed[i].spine_edge && out.pairs[i].apex_t == designed[i].apex_t &&
               out.pairs[i].apex_tp == designed[i].apex_tp;
    }
    if (!same) throw std::logic_error("reduction layout: spine pairs differ from the designed gadgets");
    for (const Gap& g : gaps) out.roles.push_back(g.role);
    return out;
}

std::vector<int> witness_from_assignment(const ReductionOutput& out, const Max2SatInstance& phi,
                                         const std::vector<bool>& x) {
    std::vector<int> s;
    for (int idx = 0; idx < static_cast<int>(out.roles.size()); ++idx) {
        const Role& r = out.roles[idx];
        bool take = false;
        if (r.kind == RoleKind::X) take = x[r.variable - 1];
        else if (r.kind == RoleKind::XBar) take = !x[r.variable - 1];
        else {
            const Clause& c = phi.clauses[r.clause];
            bool xi = x[c.i() - 1], xj = x[c.j() - 1];
            // Prefer C2 for positive clauses and C̄1 for negative ones.
            switch (r.kind) {
            case RoleKind::C2: take = xj; break;
            case RoleKind::C1: take = xi && !xj; break;
            case RoleKind::NC1: take = !xi; break;
            case RoleKind::NC2: take = xi && !xj; break;
            default: break;
            }
        }
        if (take) s.push_back(idx);
    }
    return s;
}

std::string to_string(GadgetIssueKind k) {
    switch (k) {
    case GadgetIssueKind::UnexpectedDoubleConflict: return "UnexpectedDoubleConflict";
    case GadgetIssueKind::UnexpectedDirectedConflict: return "UnexpectedDirectedConflict";
    case GadgetIssueKind::MissingDoubleConflict: return "MissingDoubleConflict";
    case GadgetIssueKind::WrongPairType: return "WrongPairType";
    }
    return "?";
}

GadgetReport verify_gadget_conflicts(const ReductionOutput& out, const Max2SatInstance& phi, const ConflictGraph& h) {
    GadgetReport rep;
    const int k = static_cast<int>(out.roles.size());
    const auto& R = out.roles;
    auto clause_of = [&](const Role& r) -> const Clause& { return phi.clauses.at(r.clause); };
    auto in_clause = [&](const Clause& c, int v) { return c.i() == v || c.j() == v; };

    auto required = [&](const Role& a, const Role& b) {
        auto one_way = [&](const Role& x, const Role& y) {
            if (x.kind == RoleKind::X && y.kind == RoleKind::XBar) return x.variable == y.variable;
            if (y.kind == RoleKind::XBar && (x.kind == RoleKind::C1 || x.kind == RoleKind::C2)) return x.variable == y.variable;
            if (y.kind == RoleKind::X && (x.kind == RoleKind::NC1 || x.kind == RoleKind::NC2)) return x.variable == y.variable;
            if (x.clause >= 0 && x.clause == y.clause) {
                return (x.kind == RoleKind::C1 && y.kind == RoleKind::C2) || (x.kind == RoleKind::NC1 && y.kind == RoleKind::NC2);
            }
            return false;
        };
        return one_way(a, b) || one_way(b, a);
    };
    auto parallel_clauses = [&](const Role& a, const Role& b) {
        if (!is_clause_role(a) || !is_clause_role(b) || a.clause == b.clause) return false;
        if (!(clause_of(a) == clause_of(b))) return false;
        auto pairkind = [](RoleKind x, RoleKind y) {
            return (x == RoleKind::C1 && y == RoleKind::C2) || (x == RoleKind::NC1 && y == RoleKind::NC2);
        };
        return pairkind(a.kind, b.kind) || pairkind(b.kind, a.kind);
    };
    auto rank = [](PairType t) { return t == PairType::Above ? 0 : (t == PairType::Crossing ? 1 : 2); };

    std::vector<PairType> types(k);
    for (int i = 0; i < k; ++i) {
        types[i] = classify_pair(out.pairs[i]);
        if (types[i] != designed_type(R[i].kind)) {
            rep.issues.push_back({GadgetIssueKind::WrongPairType, i, i, R[i].label() + " is " + std::string(to_string(types[i]))});
        }
    }
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            bool ab = h.has_edge(a, b), ba = h.has_edge(b, a);
            std::string names = R[a].label() + " " + R[b].label();
            if (ab && ba) {
                if (a > b) continue;
                ++rep.double_conflicts;
                if (!required(R[a], R[b]) && !parallel_clauses(R[a], R[b]) && !incompatible(R[a], R[b])) {
                    rep.issues.push_back({GadgetIssueKind::UnexpectedDoubleConflict, a, b, names});
                }
            } else if (ab) {
                ++rep.directed_conflicts;
                bool ordered = types[a] == types[b] ? out.pairs[a].spine_edge.a < out.pairs[b].spine_edge.a
                                                  : rank(types[a]) < rank(types[b]);
                bool exception =
                    (R[a].kind == RoleKind::C1 && R[b].kind == RoleKind::C2 && in_clause(clause_of(R[a]), R[b].variable)) ||
                    (R[a].kind == RoleKind::NC1 && R[b].kind == RoleKind::NC2 && in_clause(clause_of(R[b]), R[a].variable));
                if (!ordered && exception) ++rep.exception_edges;
                if (!ordered && !exception && !incompatible(R[a], R[b])) {
                    rep.issues.push_back({GadgetIssueKind::UnexpectedDirectedConflict, a, b, names});
                }
            }
            if (a < b && !(ab && ba) && required(R[a], R[b])) {
                rep.issues.push_back({GadgetIssueKind::MissingDoubleConflict, a, b, names});
            }
        }
    }
    return rep;
}

EquivalenceResult reduction_equivalence_check(const Max2SatInstance& phi) {
    ReductionOutput out = build_reduction(phi);
    ConflictGraph h = conflict_graph(out.pairs);
    EquivalenceResult r;
    r.ac = max_acyclic_size(h);
    r.expected = phi.w * (phi.m() + 1) + max2sat_bruteforce(phi);
    r.ok = r.ac == r.expected;
    return r;
}

}  // namespace flipdist
