#pragma once

#include "flipdist/acyclic_solver.hpp"
#include "flipdist/errors.hpp"
#include "flipdist/blowup_conflict.hpp"
#include "flipdist/flip_distance.hpp"
#include "flipdist/hardness_reduction.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace flipdist {

std::int64_t upper_bound_value(int n, int gamma_size, int ac, std::int64_t beta);
std::int64_t lower_bound_value(int n, int gamma_size, int ac, std::int64_t beta);
std::int64_t theorem_beta(int n);

struct BoundReport {
    std::int64_t upper_value = 0;
    std::int64_t lower_value = 0;
    std::int64_t beta = 0;
    int n = 0;
    int gamma_size = 0;
    int ac = 0;
};

BoundReport bound_report(int n, int gamma_size, int ac, std::int64_t beta);

struct NotAcyclic : ValidationError {
    explicit NotAcyclic(const std::string& what) : ValidationError("NotAcyclic: " + what) {}
};

struct NotASubsetOfGamma : ValidationError {
    explicit NotASubsetOfGamma(const std::string& what) : ValidationError("NotASubsetOfGamma: " + what) {}
};

struct InvalidSequence : ValidationError {
    explicit InvalidSequence(const std::string& what) : ValidationError("InvalidSequence: " + what) {}
};

// Indirect phase on the pairs outside s, direct phase on s in source order, cleanup,
// then the target side's indirect flips walked backwards.
FlipSequence construct_upper_sequence(const BlowupInstance& inst, const std::vector<int>& s);
FlipSequence construct_upper_sequence(const BlowupInstance& inst, const AcyclicResult& s);

struct SequenceAnalysis {
    std::vector<int> gone;            // sequence_length + 1 when the initial fan never vanishes
    std::vector<bool> direct;
    int direct_count = 0;
    int indirect_count = 0;
    int sequence_length = 0;
    // Conflict edges i -> j between direct pairs with gone(i) >= gone(j).
    std::vector<std::pair<int, int>> ordering_violations;
    std::optional<bool> direct_bound_holds;  // direct_count <= ac, when ac is supplied

    bool never_gone(int i) const { return gone[i] > sequence_length; }
};

SequenceAnalysis analyze_sequence(const BlowupInstance& inst, const FlipSequence& f,
                                  std::optional<int> exact_ac = std::nullopt);

struct TheoremInstance {
    Triangulation t1;
    Triangulation t2;
    std::int64_t k = 0;
    int base_n = 0;
    int gamma_size = 0;
    std::int64_t beta = 0;
    int target_ac = 0;  // w(m+1) + k'
};

TheoremInstance emit_theorem_instance(const Max2SatInstance& phi);

}  // namespace flipdist
