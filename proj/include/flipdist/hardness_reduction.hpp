#pragma once

#include "flipdist/blowup_conflict.hpp"
#include "flipdist/convex_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flipdist {

enum class Side { Positive, Negative };

struct Literal {
    int var = 0;  // 1-based
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

struct Clause {
    Side side = Side::Positive;
    Literal first;
    Literal second;

    static Clause positive(int i, int j) { return Clause{Side::Positive, {i, false}, {j, false}}; }
    static Clause negative(int i, int j) { return Clause{Side::Negative, {i, true}, {j, true}}; }
    int i() const { return first.var; }
    int j() const { return second.var; }
    bool operator==(const Clause&) const = default;
};

struct Max2SatInstance {
    int w = 0;
    std::vector<Clause> clauses;
    std::optional<int> k_prime;

    int m() const { return static_cast<int>(clauses.size()); }
};

enum class InstanceIssueKind { NotMonotone, NotLaminar, BadClause };

struct InstanceIssue {
    InstanceIssueKind kind;
    int first = -1;
    int second = -1;

    std::string message() const;
};

std::optional<InstanceIssue> validate_instance(const Max2SatInstance& phi);

// Assignment bit v-1 holds x_v.
bool clause_satisfied(const Clause& c, const std::vector<bool>& assignment);
int satisfied_count(const Max2SatInstance& phi, const std::vector<bool>& assignment);

inline constexpr int kBruteForceVarCap = 20;
int max2sat_bruteforce(const Max2SatInstance& phi);
std::vector<bool> best_assignment(const Max2SatInstance& phi);

enum class RoleKind { X, XBar, C1, C2, NC1, NC2 };

struct Role {
    RoleKind kind = RoleKind::X;
    int variable = 0;  // 1-based, the variable the role's literal talks about
    int copy = 0;      // for X / XBar
    int clause = -1;   // for clause roles

    std::string label() const;
    static std::optional<Role> parse(const std::string& label, const Max2SatInstance& phi);
    bool operator==(const Role&) const = default;
};

struct ReductionOutput {
    Triangulation t1;
    Triangulation t2;
    std::vector<SpinePair> pairs;
    std::vector<Role> roles;  // parallel to pairs
};

ReductionOutput build_reduction(const Max2SatInstance& phi);

// Gamma indices of the conventional witness for an assignment.
std::vector<int> witness_from_assignment(const ReductionOutput& out, const Max2SatInstance& phi,
                                         const std::vector<bool>& assignment);

enum class GadgetIssueKind { UnexpectedDoubleConflict, UnexpectedDirectedConflict, MissingDoubleConflict, WrongPairType };

struct GadgetIssue {
    GadgetIssueKind kind;
    int from = -1;
    int to = -1;
    std::string detail;
};

struct GadgetReport {
    std::vector<GadgetIssue> issues;
    int double_conflicts = 0;    // unordered pairs
    int directed_conflicts = 0;  // one-way edges
    int exception_edges = 0;     // the two same-variable exceptions

    bool clean() const { return issues.empty(); }
};

GadgetReport verify_gadget_conflicts(const ReductionOutput& out, const Max2SatInstance& phi, const ConflictGraph& h);

struct EquivalenceResult {
    bool ok = false;
    int ac = 0;
    int expected = 0;
};

EquivalenceResult reduction_equivalence_check(const Max2SatInstance& phi);

std::string to_string(GadgetIssueKind k);

}  // namespace flipdist
