#include "doctest.h"
#include "instance_family.hpp"
#include "random_instances.hpp"

#include "flipdist/acyclic_solver.hpp"
#include "flipdist/bounds_pipeline.hpp"

#include <random>

using namespace flipdist;

namespace {

struct Drawn {
    BlowupInstance inst;
    ConflictGraph h;
};

// Base pair with n <= 7 whose blow-up stays within 13 vertices.
Drawn draw(std::mt19937_64& rng, int beta) {
    std::uniform_int_distribution<int> size(5, 7);
    for (;;) {
        int n = size(rng);
        auto t1 = testing_support::uniform_triangulation(n, rng);
        auto t2 = testing_support::uniform_triangulation(n, rng);
        auto g = spine_pairs(t1, t2);
        if (g.empty() || n + beta * static_cast<int>(g.size()) > 13) continue;
        auto inst = blow_up(t1, t2, beta);
        auto h = conflict_graph(inst);
        return {std::move(inst), std::move(h)};
    }
}

}  // namespace

TEST_CASE("bound formulas") {
    CHECK(upper_bound_value(12, 4, 2, 10) == 288);
    CHECK(upper_bound_value(12, 4, 4, 7) == 7 * 4 + 12 * 19);
    CHECK(upper_bound_value(12, 4, 2, 0) == 12 * 19);
    CHECK(lower_bound_value(12, 4, 2, 10) == -372);
    CHECK(lower_bound_value(12, 4, 2, 1000) == 5568);
    CHECK_THROWS_AS(lower_bound_value(12, 4, 8, 10), PreconditionViolated);
    CHECK_THROWS_AS(upper_bound_value(12, 4, -1, 10), PreconditionViolated);
    CHECK(theorem_beta(12) == 936);
    CHECK(theorem_beta(3) == 72);
    CHECK_THROWS_AS(theorem_beta(2), PreconditionViolated);
    auto r = bound_report(12, 4, 2, 10);
    CHECK(r.upper_value == 288);
    CHECK(r.lower_value == -372);
    CHECK(r.gamma_size == 4);
}

TEST_CASE("construction on identical pairs is empty") {
    auto f0 = fan_triangulation(5, 0);
    auto inst = blow_up(f0, f0, 2);
    auto s = max_acyclic_subset(conflict_graph(inst));
    CHECK(s.size == inst.gamma());
    auto seq = construct_upper_sequence(inst, s);
    CHECK(seq.steps.empty());
    CHECK_FALSE(validate_sequence(seq, inst.blown_tp));

    auto a = analyze_sequence(inst, seq, s.size);
    CHECK(a.direct_count == inst.gamma());
    CHECK(a.indirect_count == 0);
    for (int i = 0; i < inst.gamma(); ++i) CHECK(a.never_gone(i));
}

TEST_CASE("construction rejects bad subsets") {
    std::mt19937_64 rng(11);
    auto d = draw(rng, 1);
    CHECK_THROWS_AS(construct_upper_sequence(d.inst, std::vector<int>{d.inst.gamma()}), NotASubsetOfGamma);
    CHECK_THROWS_AS(construct_upper_sequence(d.inst, std::vector<int>{0, 0}), NotASubsetOfGamma);
    // A 2-cycle if one exists.
    for (auto [i, j] : d.h.edges) {
        if (d.h.has_edge(j, i)) {
            CHECK_THROWS_AS(construct_upper_sequence(d.inst, std::vector<int>{std::min(i, j), std::max(i, j)}),
                            NotAcyclic);
            break;
        }
    }
}

TEST_CASE("sandwich on random blow-ups") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int beta = 1 + trial % 3;
        auto d = draw(rng, beta);
        auto s = max_acyclic_subset(d.h);
        auto seq = construct_upper_sequence(d.inst, s);
        REQUIRE_FALSE(validate_sequence(seq, d.inst.blown_tp));
        const int n = d.inst.base_n(), g = d.inst.gamma();
        const auto len = static_cast<std::int64_t>(seq.steps.size());
        const int exact = exact_distance(d.inst.blown_t, d.inst.blown_tp).distance;
        CHECK(lower_bound_value(n, g, s.size, beta) <= exact);
        CHECK(exact <= len);
        CHECK(len <= upper_bound_value(n, g, s.size, beta));
    }
}

TEST_CASE("larger acyclic subsets never lengthen the construction") {
    // Holds once beta - 1 outweighs one setup plus the cleanup, 4(n-3) flips.
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> size(5, 7);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = size(rng);
        auto t1 = testing_support::uniform_triangulation(n, rng);
        auto t2 = testing_support::uniform_triangulation(n, rng);
        Drawn d{blow_up(t1, t2, 4 * n), {}};
        d.h = conflict_graph(d.inst);
        auto best = max_acyclic_subset(d.h);
        const auto best_len = construct_upper_sequence(d.inst, best).steps.size();
        // Every acyclic subset obtained by dropping one element, and the empty set.
        for (std::size_t drop = 0; drop < best.subset.size(); ++drop) {
            auto smaller = best.subset;
            smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
            CHECK(best_len <= construct_upper_sequence(d.inst, smaller).steps.size());
        }
        CHECK(best_len <= construct_upper_sequence(d.inst, std::vector<int>{}).steps.size());
    }
}

TEST_CASE("analyzer agrees with the construction") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto d = draw(rng, 1 + trial % 2);
        auto best = max_acyclic_subset(d.h);
        for (const auto& s : {best.subset, std::vector<int>{}}) {
            auto seq = construct_upper_sequence(d.inst, s);
            auto a = analyze_sequence(d.inst, seq, best.size);
            CHECK(a.direct_count + a.indirect_count == d.inst.gamma());
            CHECK(a.ordering_violations.empty());
            CHECK(*a.direct_bound_holds);
            std::vector<char> in_s(d.inst.gamma(), 0);
            for (int i : s) in_s[i] = 1;
            for (int i = 0; i < d.inst.gamma(); ++i) {
                if (in_s[i] || d.inst.apex_t(i) == d.inst.apex_tp(i)) continue;
                CHECK_FALSE(a.direct[i]);
                CHECK_FALSE(a.never_gone(i));
            }
        }
    }
}

TEST_CASE("analyzer on shortest sequences") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        auto d = draw(rng, 1 + trial % 2);
        auto best = exact_distance(d.inst.blown_t, d.inst.blown_tp);
        auto a = analyze_sequence(d.inst, best.witness, max_acyclic_size(d.h));
        CHECK(a.ordering_violations.empty());
        CHECK(*a.direct_bound_holds);
    }
}

TEST_CASE("analyzer input checks") {
    auto f0 = fan_triangulation(6, 0);
    auto f2 = fan_triangulation(6, 2);
    auto inst = blow_up(f0, f2, 1);
    CHECK_THROWS_AS(analyze_sequence(inst, FlipSequence{inst.blown_t, {}}), InvalidSequence);
    CHECK_THROWS_AS(analyze_sequence(inst, FlipSequence{inst.blown_tp, {}}), InvalidSequence);
    auto zero = blow_up(f0, f2, 0);
    CHECK_THROWS_AS(analyze_sequence(zero, FlipSequence{zero.blown_t, {}}), PreconditionViolated);
}

TEST_CASE("theorem instance") {
    Max2SatInstance phi{1, {}, std::nullopt};
    auto th = emit_theorem_instance(phi);
    CHECK(th.gamma_size == 2);
    CHECK(th.beta == theorem_beta(th.base_n));
    CHECK(th.t1.n() == th.base_n + th.beta * th.gamma_size);
    CHECK_FALSE(validate(th.t1));
    CHECK_FALSE(validate(th.t2));
    CHECK(th.target_ac == 1);
    CHECK(th.k == upper_bound_value(th.base_n, th.gamma_size, 1, th.beta));

    for (const auto& psi : testing_support::clause_family(2, 2)) {
        auto t = emit_theorem_instance(psi);
        CHECK(t.t1.n() == t.base_n + t.beta * t.gamma_size);
        CHECK(t.target_ac == psi.w * (psi.m() + 1));
    }
}
