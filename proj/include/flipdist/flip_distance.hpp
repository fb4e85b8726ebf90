#pragma once

#include "flipdist/convex_core.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace flipdist {

struct FlipSequence {
    Triangulation start;
    std::vector<Edge> steps;  // diagonal removed at each step
};

enum class SequenceIssueKind { IllegalStep, WrongTarget };

struct SequenceIssue {
    SequenceIssueKind kind;
    std::size_t index = 0;

    std::string message() const;
};

std::optional<SequenceIssue> validate_sequence(const FlipSequence& f, const Triangulation& target);

// Final triangulation; throws NotADiagonal on an illegal step.
Triangulation replay(const FlipSequence& f);
// The same path walked backwards, starting from replay(f).
FlipSequence reversed(const FlipSequence& f);

// A face of the common-diagonal subdivision, with both triangulations restricted to
// it and relabelled 0..k-1 in increasing order of `vertices`.
struct SubInstance {
    std::vector<VertexId> vertices;
    Triangulation first;
    Triangulation second;
};

std::vector<SubInstance> happy_split(const Triangulation& t1, const Triangulation& t2);

struct DistanceResult {
    int distance = 0;
    FlipSequence witness;
};

inline constexpr std::size_t kDefaultSearchBudget = 4'000'000;
// Per component of happy_split; bitmask adjacency limits components to 64 vertices.
inline constexpr int kExactComponentCap = 64;

DistanceResult exact_distance(const Triangulation& t1, const Triangulation& t2,
                              std::size_t budget = kDefaultSearchBudget);

inline constexpr int kDiameterCap = 12;
int diameter(int n);

// `region` lists the sub-polygon's vertices; consecutive ones (cyclically) must be
// joined by edges of t.
FlipSequence fan_sequence(const Triangulation& t, std::vector<VertexId> region, VertexId apex);

FlipSequence two_approx_sequence(const Triangulation& t1, const Triangulation& t2);

std::size_t difference_size(const Triangulation& t1, const Triangulation& t2);

}  // namespace flipdist
