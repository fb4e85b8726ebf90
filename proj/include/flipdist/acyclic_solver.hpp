#pragma once

#include "flipdist/blowup_conflict.hpp"

#include <vector>

namespace flipdist {

struct AcyclicResult {
    std::vector<int> subset;  // ascending
    int size = 0;
    bool exact = false;
};

bool is_acyclic(const ConflictGraph& h, const std::vector<int>& s);

// Sources first; among available sources the smallest index. Empty if s has a cycle.
std::vector<int> source_order(const ConflictGraph& h, const std::vector<int>& s);

inline constexpr int kExactAcyclicCap = 64;

// Exact maximum with the lexicographically smallest witness.
AcyclicResult max_acyclic_subset(const ConflictGraph& h);
// Size only, skipping the witness tie-break.
int max_acyclic_size(const ConflictGraph& h);
AcyclicResult heuristic_acyclic(const ConflictGraph& h);

}  // namespace flipdist
