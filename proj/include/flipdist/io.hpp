#pragma once

#include "flipdist/acyclic_solver.hpp"
#include "flipdist/blowup_conflict.hpp"
#include "flipdist/bounds_pipeline.hpp"
#include "flipdist/convex_core.hpp"
#include "flipdist/flip_distance.hpp"
#include "flipdist/hardness_reduction.hpp"
#include "flipdist/tree_bijection.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace flipdist::io {

// One output line: a keyword and named values. Text renders `kind v1 v2 ...`,
// json-lines renders {"record": kind, name1: v1, ...}.
struct Field {
    std::string name;
    std::string value;
    bool numeric = true;
    bool keyed = false;  // text renders `name value`
};

struct Record {
    std::string kind;
    std::vector<Field> fields;

    Record& num(std::string name, long long v);
    Record& str(std::string name, std::string v);
    Record& keyed(std::string name, long long v);
    const std::string& at(std::size_t i) const;
    long long integer(std::size_t i) const;
};

enum class Format { Text, JsonLines };

std::string render(const std::vector<Record>& records, Format format);
std::string render(const Record& record, Format format);
// Accepts both renderings line by line; blank lines and `#` comments are skipped.
std::vector<Record> read_records(std::string_view content);

std::vector<Record> triangulation_records(const Triangulation& t);
Triangulation parse_triangulation(std::string_view content);
Triangulation triangulation_from_records(const std::vector<Record>& recs, std::size_t& pos);

std::string format_tree(const BinaryTree& t);
BinaryTree parse_tree(std::string_view content);

std::vector<Record> sequence_records(const FlipSequence& f);
FlipSequence parse_sequence(std::string_view content);

struct ConflictFile {
    std::vector<SpinePair> pairs;
    std::vector<PairType> types;
    ConflictGraph graph;
};

std::vector<Record> conflict_records(const std::vector<SpinePair>& pairs, const ConflictGraph& h);
ConflictFile parse_conflict(std::string_view content);

std::vector<Record> acyclic_records(const AcyclicResult& r);
AcyclicResult parse_acyclic(std::string_view content);

std::vector<Record> max2sat_records(const Max2SatInstance& phi);
Max2SatInstance parse_max2sat(std::string_view content);

std::vector<Record> role_records(const std::vector<Role>& roles);
std::vector<Role> parse_role_map(std::string_view content, const Max2SatInstance& phi);

std::vector<Record> bound_records(const BoundReport& r);
std::vector<Record> analysis_records(const SequenceAnalysis& a);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace flipdist::io
