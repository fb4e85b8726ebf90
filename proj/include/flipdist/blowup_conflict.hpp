#pragma once

#include "flipdist/convex_core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flipdist {

// Triangles of T and T' sharing spine edge (l, l+1) as their only spine edge.
struct SpinePair {
    Edge spine_edge;
    VertexId apex_t = 0;
    VertexId apex_tp = 0;
    int index = 0;
};

enum class PairType { Above, Below, Crossing, MirroredOrOther };

std::string_view to_string(PairType t);
std::optional<PairType> parse_pair_type(std::string_view s);

struct BlowupInstance {
    Triangulation base_t;
    Triangulation base_tp;
    int beta = 0;
    std::vector<SpinePair> pairs;
    std::vector<VertexId> vertex_map;
    Triangulation blown_t;
    Triangulation blown_tp;
    // Per pair, in blown labels: the fans and the inserted vertices.
    std::vector<std::vector<Edge>> fan_t;
    std::vector<std::vector<Edge>> fan_tp;
    std::vector<std::vector<VertexId>> new_vertices;

    int base_n() const { return base_t.n(); }
    int blown_n() const { return blown_t.n(); }
    int gamma() const { return static_cast<int>(pairs.size()); }
    // Blown labels of the pair's spine endpoints and apexes.
    VertexId left(int i) const { return vertex_map[pairs[i].spine_edge.a]; }
    VertexId right(int i) const { return vertex_map[pairs[i].spine_edge.b]; }
    VertexId apex_t(int i) const { return vertex_map[pairs[i].apex_t]; }
    VertexId apex_tp(int i) const { return vertex_map[pairs[i].apex_tp]; }
};

std::vector<SpinePair> spine_pairs(const Triangulation& t1, const Triangulation& t2);
BlowupInstance blow_up(const Triangulation& t1, const Triangulation& t2, int beta);
PairType classify_pair(const SpinePair& p);

struct ConflictGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;  // sorted, no self-loops

    bool has_edge(int i, int j) const;
};

ConflictGraph conflict_graph(const BlowupInstance& inst);
ConflictGraph conflict_graph(const std::vector<SpinePair>& pairs);

// Crossing test on the fans of an actual blow-up, every edge against every edge.
// `all` reports whether every pair crosses, `any` whether some pair does.
struct FanCrossing {
    bool any = false;
    bool all = false;
};
FanCrossing fan_crossing(const BlowupInstance& inst, int i, int j);

struct PremiseViolation {
    int from = -1;
    int to = -1;
    std::string reason;
};

std::optional<PremiseViolation> check_acyclic_premises(const ConflictGraph& h, const std::vector<PairType>& types,
                                                       const std::vector<int>& subset);

}  // namespace flipdist
