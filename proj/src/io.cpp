#include "flipdist/io.hpp"

#include "flipdist/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace flipdist::io {

namespace {

using ordered_json = nlohmann::ordered_json;

long long to_int(const std::string& s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("expected an integer, got '" + s + "'");
    return v;
}

int to_small(long long v) {
    if (v < -(1LL << 30) || v > (1LL << 30)) throw ParseError("value out of range: " + std::to_string(v));
    return static_cast<int>(v);
}

void expect(const Record& r, std::string_view kind, std::size_t arity) {
    if (r.kind != kind) throw ParseError("expected '" + std::string(kind) + "', got '" + r.kind + "'");
    if (r.fields.size() != arity) {
        throw ParseError("'" + r.kind + "' takes " + std::to_string(arity) + " values, got " +
                         std::to_string(r.fields.size()));
    }
}

Record parse_json_line(const std::string& line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object() || !j.contains("record") || !j["record"].is_string()) {
        throw ParseError("json line without a string \"record\" field");
    }
    Record r;
    r.kind = j["record"].get<std::string>();
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "record") continue;
        if (it->is_number_integer()) {
            r.num(it.key(), it->get<long long>());
        } else if (it->is_string()) {
            r.str(it.key(), it->get<std::string>());
        } else {
            throw ParseError("unsupported json value for '" + it.key() + "'");
        }
    }
    return r;
}

Edge checked_diagonal(long long a, long long b, int n) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
        throw NotADiagonal("(" + std::to_string(a) + "," + std::to_string(b) + ") outside 0.." + std::to_string(n - 1));
    }
    Edge e(static_cast<int>(a), static_cast<int>(b));
    if (!is_interior(e, n)) throw NotADiagonal("(" + std::to_string(e.a) + "," + std::to_string(e.b) + ") is a boundary edge");
    return e;
}

}  // namespace

Record& Record::num(std::string name, long long v) {
    fields.push_back({std::move(name), std::to_string(v), true});
    return *this;
}

Record& Record::str(std::string name, std::string v) {
    fields.push_back({std::move(name), std::move(v), false});
    return *this;
}

const std::string& Record::at(std::size_t i) const {
    if (i >= fields.size()) throw ParseError("'" + kind + "' is missing value " + std::to_string(i + 1));
    return fields[i].value;
}

Record& Record::keyed(std::string name, long long v) {
    fields.push_back({std::move(name), std::to_string(v), true, true});
    return *this;
}

long long Record::integer(std::size_t i) const { return to_int(at(i)); }

std::string render(const Record& record, Format format) {
    if (format == Format::Text) {
        std::string out = record.kind;
        for (const Field& f : record.fields) out += (f.keyed ? " " + f.name + " " : " ") + f.value;
        return out;
    }
    ordered_json j;
    j["record"] = record.kind;
    for (const Field& f : record.fields) {
        if (f.numeric) {
            j[f.name] = to_int(f.value);
        } else {
            j[f.name] = f.value;
        }
    }
    return j.dump();
}

std::string render(const std::vector<Record>& records, Format format) {
    std::string out;
    for (const Record& r : records) out += render(r, format) + "\n";
    return out;
}

std::vector<Record> read_records(std::string_view content) {
    std::vector<Record> out;
    std::istringstream in{std::string(content)};
    std::string line;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        if (line[start] == '{') {
            out.push_back(parse_json_line(line));
            continue;
        }
        std::istringstream words(line);
        Record r;
        words >> r.kind;
        std::string w;
        while (words >> w) {
            bool numeric = !w.empty() && (std::isdigit(static_cast<unsigned char>(w[0])) || w[0] == '-');
            r.fields.push_back({"", w, numeric});
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Record> triangulation_records(const Triangulation& t) {
    std::vector<Record> out;
    out.push_back(Record{"n", {}}.num("n", t.n()));
    for (const Edge& e : t.diagonals()) out.push_back(Record{"d", {}}.num("a", e.a).num("b", e.b));
    return out;
}

Triangulation triangulation_from_records(const std::vector<Record>& recs, std::size_t& pos) {
    if (pos >= recs.size()) throw ParseError("missing 'n' line");
    expect(recs[pos], "n", 1);
    const long long n = recs[pos].integer(0);
    if (n < 3 || n > (1 << 20)) throw ParseError("polygon size " + std::to_string(n) + " out of range");
    ++pos;
    std::vector<Edge> diags;
    for (; pos < recs.size() && recs[pos].kind == "d"; ++pos) {
        expect(recs[pos], "d", 2);
        diags.push_back(checked_diagonal(recs[pos].integer(0), recs[pos].integer(1), static_cast<int>(n)));
    }
    Triangulation t(static_cast<int>(n), diags);
    if (auto issue = validate(t)) throw InvalidTriangulation(issue->message());
    return t;
}

Triangulation parse_triangulation(std::string_view content) {
    auto recs = read_records(content);
    std::size_t pos = 0;
    Triangulation t = triangulation_from_records(recs, pos);
    if (pos != recs.size()) throw ParseError("unexpected '" + recs[pos].kind + "' line");
    return t;
}

std::string format_tree(const BinaryTree& t) { return t.preorder(); }

BinaryTree parse_tree(std::string_view content) {
    auto start = content.find_first_not_of(" \t\r\n");
    if (start != std::string_view::npos && content[start] == '{') {
        auto recs = read_records(content);
        if (recs.size() != 1) throw ParseError("expected one tree record");
        expect(recs[0], "tree", 1);
        return BinaryTree::from_preorder(recs[0].at(0));
    }
    // Tolerate the `tree` keyword the CLI prints in front of the tokens.
    std::string_view body = content.substr(start == std::string_view::npos ? content.size() : start);
    if (body.starts_with("tree ") || body.starts_with("tree\t")) body.remove_prefix(5);
    return BinaryTree::from_preorder(body);
}

std::vector<Record> sequence_records(const FlipSequence& f) {
    std::vector<Record> out;
    auto tri = triangulation_records(f.start);
    out.push_back(tri.front());
    out.push_back(Record{"start", {}});
    out.insert(out.end(), tri.begin() + 1, tri.end());
    for (const Edge& e : f.steps) out.push_back(Record{"flip", {}}.num("a", e.a).num("b", e.b));
    return out;
}

FlipSequence parse_sequence(std::string_view content) {
    auto recs = read_records(content);
    if (recs.size() < 2) throw ParseError("sequence needs 'n' and 'start' lines");
    expect(recs[1], "start", 0);
    // Reassemble the triangulation block without the start marker.
    std::vector<Record> block{recs[0]};
    std::size_t pos = 2;
    while (pos < recs.size() && recs[pos].kind == "d") block.push_back(recs[pos++]);
    std::size_t bpos = 0;
    FlipSequence f{triangulation_from_records(block, bpos), {}};
    for (; pos < recs.size(); ++pos) {
        expect(recs[pos], "flip", 2);
        f.steps.push_back(checked_diagonal(recs[pos].integer(0), recs[pos].integer(1), f.start.n()));
    }
    return f;
}

std::vector<Record> conflict_records(const std::vector<SpinePair>& pairs, const ConflictGraph& h) {
    std::vector<Record> out;
    out.push_back(Record{"pairs", {}}.num("count", static_cast<long long>(pairs.size())));
    for (const SpinePair& p : pairs) {
        out.push_back(Record{"pair", {}}
                          .num("idx", p.index)
                          .num("spineA", p.spine_edge.a)
                          .num("spineB", p.spine_edge.b)
                          .num("apexT", p.apex_t)
                          .num("apexTp", p.apex_tp)
                          .str("type", std::string(to_string(classify_pair(p)))));
    }
    for (auto [i, j] : h.edges) out.push_back(Record{"conf", {}}.num("i", i).num("j", j));
    return out;
}

ConflictFile parse_conflict(std::string_view content) {
    auto recs = read_records(content);
    if (recs.empty()) throw ParseError("empty conflict graph");
    expect(recs[0], "pairs", 1);
    const long long count = recs[0].integer(0);
    if (count < 0 || count > 100000 || recs.size() < static_cast<std::size_t>(count) + 1) {
        throw ParseError("pair count " + std::to_string(count) + " does not match the file");
    }
    ConflictFile out;
    out.graph.vertex_count = static_cast<int>(count);
    for (int k = 0; k < count; ++k) {
        const Record& r = recs[1 + k];
        expect(r, "pair", 6);
        if (r.integer(0) != k) throw ParseError("pair lines must be numbered 0.." + std::to_string(count - 1));
        SpinePair p{Edge(to_small(r.integer(1)), to_small(r.integer(2))), to_small(r.integer(3)),
                    to_small(r.integer(4)), k};
        auto type = parse_pair_type(r.at(5));
        if (!type) throw ParseError("unknown pair type '" + r.at(5) + "'");
        out.pairs.push_back(p);
        out.types.push_back(*type);
    }
    for (std::size_t pos = 1 + count; pos < recs.size(); ++pos) {
        expect(recs[pos], "conf", 2);
        long long i = recs[pos].integer(0), j = recs[pos].integer(1);
        if (i < 0 || j < 0 || i >= count || j >= count || i == j) {
            throw ParseError("conflict edge " + std::to_string(i) + "->" + std::to_string(j) + " out of range");
        }
        out.graph.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    std::sort(out.graph.edges.begin(), out.graph.edges.end());
    out.graph.edges.erase(std::unique(out.graph.edges.begin(), out.graph.edges.end()), out.graph.edges.end());
    return out;
}

std::vector<Record> acyclic_records(const AcyclicResult& r) {
    std::vector<Record> out;
    out.push_back(Record{"ac", {}}.num("size", r.size).str("mode", r.exact ? "exact" : "heur"));
    for (int i : r.subset) out.push_back(Record{"in", {}}.num("idx", i));
    return out;
}

AcyclicResult parse_acyclic(std::string_view content) {
    auto recs = read_records(content);
    if (recs.empty()) throw ParseError("empty acyclic result");
    expect(recs[0], "ac", 2);
    AcyclicResult r;
    r.size = to_small(recs[0].integer(0));
    const std::string& mode = recs[0].at(1);
    if (mode != "exact" && mode != "heur") throw ParseError("mode must be exact or heur");
    r.exact = mode == "exact";
    for (std::size_t pos = 1; pos < recs.size(); ++pos) {
        expect(recs[pos], "in", 1);
        r.subset.push_back(to_small(recs[pos].integer(0)));
    }
    std::sort(r.subset.begin(), r.subset.end());
    if (std::adjacent_find(r.subset.begin(), r.subset.end()) != r.subset.end()) throw ParseError("repeated index");
    if (static_cast<int>(r.subset.size()) != r.size) throw ParseError("size does not match the listed indices");
    return r;
}

std::vector<Record> max2sat_records(const Max2SatInstance& phi) {
    std::vector<Record> out;
    out.push_back(Record{"vars", {}}.num("w", phi.w));
    for (const Clause& c : phi.clauses) {
        out.push_back(Record{"clause", {}}
                          .str("side", c.side == Side::Positive ? "pos" : "neg")
                          .num("i", c.i())
                          .num("j", c.j()));
    }
    if (phi.k_prime) out.push_back(Record{"k", {}}.num("k", *phi.k_prime));
    return out;
}

Max2SatInstance parse_max2sat(std::string_view content) {
    auto recs = read_records(content);
    if (recs.empty()) throw ParseError("empty 2sat instance");
    expect(recs[0], "vars", 1);
    Max2SatInstance phi;
    phi.w = to_small(recs[0].integer(0));
    if (phi.w < 1) throw ParseError("vars must be positive");
    for (std::size_t pos = 1; pos < recs.size(); ++pos) {
        const Record& r = recs[pos];
        if (r.kind == "k") {
            expect(r, "k", 1);
            if (phi.k_prime) throw ParseError("repeated k line");
            phi.k_prime = to_small(r.integer(0));
            if (*phi.k_prime < 0) throw ParseError("k must be non-negative");
            continue;
        }
        if (r.kind != "clause") throw ParseError("unexpected '" + r.kind + "' line");
        Clause c;
        if (r.fields.size() == 3) {
            const std::string& side = r.at(0);
            if (side != "pos" && side != "neg") throw ParseError("clause side must be pos or neg");
            c = side == "pos" ? Clause::positive(to_small(r.integer(1)), to_small(r.integer(2)))
                              : Clause::negative(to_small(r.integer(1)), to_small(r.integer(2)));
        } else if (r.fields.size() == 2) {
            // Signed literals: `clause 1 2` or `clause -1 -2`.
            long long a = r.integer(0), b = r.integer(1);
            if (a == 0 || b == 0) throw ParseError("literal 0 is not a variable");
            c.first = Literal{to_small(a < 0 ? -a : a), a < 0};
            c.second = Literal{to_small(b < 0 ? -b : b), b < 0};
            c.side = c.first.negated ? Side::Negative : Side::Positive;
        } else {
            throw ParseError("clause takes 'pos|neg i j' or two signed literals");
        }
        phi.clauses.push_back(c);
    }
    return phi;
}

std::vector<Record> role_records(const std::vector<Role>& roles) {
    std::vector<Record> out;
    for (std::size_t k = 0; k < roles.size(); ++k) {
        out.push_back(Record{"role", {}}.num("idx", static_cast<long long>(k)).str("label", roles[k].label()));
    }
    return out;
}

std::vector<Role> parse_role_map(std::string_view content, const Max2SatInstance& phi) {
    std::vector<Role> out;
    for (const Record& r : read_records(content)) {
        expect(r, "role", 2);
        if (r.integer(0) != static_cast<long long>(out.size())) throw ParseError("role lines must be numbered in order");
        auto role = Role::parse(r.at(1), phi);
        if (!role) throw ParseError("bad role label '" + r.at(1) + "'");
        out.push_back(*role);
    }
    return out;
}

std::vector<Record> bound_records(const BoundReport& r) {
    return {Record{"bound", {}}.keyed("upper", r.upper_value), Record{"bound", {}}.keyed("lower", r.lower_value)};
}

std::vector<Record> analysis_records(const SequenceAnalysis& a) {
    std::vector<Record> out;
    out.push_back(Record{"analysis", {}}.keyed("direct", a.direct_count).keyed("indirect", a.indirect_count));
    for (std::size_t i = 0; i < a.gone.size(); ++i) {
        Record r{"gone", {}};
        r.num("idx", static_cast<long long>(i));
        if (a.never_gone(static_cast<int>(i))) {
            r.str("index", "never");
        } else {
            r.num("index", a.gone[i]);
        }
        r.str("class", a.direct[i] ? "direct" : "indirect");
        out.push_back(std::move(r));
    }
    for (auto [i, j] : a.ordering_violations) out.push_back(Record{"ordering_violation", {}}.num("i", i).num("j", j));
    if (a.direct_bound_holds) {
        out.push_back(Record{"direct_bound", {}}.str("holds", *a.direct_bound_holds ? "yes" : "no"));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << content;
}

}  // namespace flipdist::io
