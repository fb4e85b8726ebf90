#include "cli.hpp"

#include "svg.hpp"

#include "flipdist/acyclic_solver.hpp"
#include "flipdist/blowup_conflict.hpp"
#include "flipdist/bounds_pipeline.hpp"
#include "flipdist/convex_core.hpp"
#include "flipdist/errors.hpp"
#include "flipdist/flip_distance.hpp"
#include "flipdist/hardness_reduction.hpp"
#include "flipdist/io.hpp"
#include "flipdist/tree_bijection.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <random>

namespace flipdist::cli {

namespace {

namespace fs = std::filesystem;
using io::Format;
using io::Record;

struct Context {
    std::ostream& out;
    Format format = Format::Text;
    unsigned long long seed = kDefaultSeed;

    void emit(const std::vector<Record>& recs) const { out << io::render(recs, format); }
    void emit(const Record& r) const { out << io::render(r, format) << "\n"; }
    void save(const std::string& path, const std::vector<Record>& recs) const {
        io::write_file(path, io::render(recs, format));
    }
};

Triangulation load_tri(const std::string& path) { return io::parse_triangulation(io::read_file(path)); }

Max2SatInstance load_sat(const std::string& path) {
    auto phi = io::parse_max2sat(io::read_file(path));
    if (auto issue = validate_instance(phi)) throw ValidationError(issue->message());
    return phi;
}

std::pair<Triangulation, Triangulation> load_pair(const std::string& a, const std::string& b) {
    auto t1 = load_tri(a);
    auto t2 = load_tri(b);
    if (t1.n() != t2.n()) throw SizeMismatch(std::to_string(t1.n()) + " vs " + std::to_string(t2.n()));
    return {std::move(t1), std::move(t2)};
}

std::string join(const std::vector<VertexId>& vs) {
    std::string s;
    for (std::size_t k = 0; k < vs.size(); ++k) s += (k ? "," : "") + std::to_string(vs[k]);
    return s.empty() ? "-" : s;
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

AcyclicResult solve_acyclic(const ConflictGraph& h, bool heuristic) {
    return heuristic ? heuristic_acyclic(h) : max_acyclic_subset(h);
}

// Each subcommand registers its options and returns the action to run once parsed.
using Action = std::function<int(const Context&)>;

struct Registry {
    CLI::App& app;
    std::vector<std::pair<CLI::App*, Action>> commands;

    CLI::App* add(const std::string& name, const std::string& help) { return app.add_subcommand(name, help); }
};

void add_enumerate(Registry& r) {
    auto* c = r.add("enumerate", "List every triangulation of the n-gon");
    auto n = std::make_shared<int>(0);
    auto list = std::make_shared<bool>(false);
    c->add_option("--n", *n, "Polygon size")->required()->check(CLI::Range(3, kEnumerateCap));
    c->add_flag("--list", *list, "Print each triangulation");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto all = enumerate(*n);
        ctx.emit(Record{"enumerate", {}}.keyed("n", *n).keyed("count", static_cast<long long>(all.size())));
        if (*list) {
            for (std::size_t k = 0; k < all.size(); ++k) {
                std::string d;
                for (const Edge& e : all[k].diagonals()) d += (d.empty() ? "" : ",") + std::to_string(e.a) + "-" + std::to_string(e.b);
                ctx.emit(Record{"tri", {}}.num("idx", static_cast<long long>(k)).str("diagonals", d.empty() ? "-" : d));
            }
        }
        return kExitOk;
    });
}

void add_distance(Registry& r) {
    auto* c = r.add("distance", "Flip distance between two triangulations with a witness sequence");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>(), save = std::make_shared<std::string>();
    auto budget = std::make_shared<std::size_t>(kDefaultSearchBudget);
    auto approx = std::make_shared<bool>(false);
    c->add_option("--a", *a, "First triangulation file")->required();
    c->add_option("--b", *b, "Second triangulation file")->required();
    c->add_option("--budget", *budget, "Maximum number of search states");
    c->add_flag("--approx", *approx, "Use the fan-based 2-approximation instead of exact search");
    c->add_option("--out", *save, "Write the witness sequence to this file");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto [t1, t2] = load_pair(*a, *b);
        FlipSequence seq;
        if (*approx) {
            seq = two_approx_sequence(t1, t2);
            ctx.emit(Record{"approx", {}}.num("length", static_cast<long long>(seq.steps.size())));
        } else {
            auto res = exact_distance(t1, t2, *budget);
            seq = res.witness;
            ctx.emit(Record{"distance", {}}.num("distance", res.distance));
        }
        if (save->empty()) {
            ctx.emit(io::sequence_records(seq));
        } else {
            ctx.save(*save, io::sequence_records(seq));
        }
        return kExitOk;
    });
}

void add_diameter(Registry& r) {
    auto* c = r.add("diameter", "Diameter of the flip graph of the n-gon");
    auto n = std::make_shared<int>(0);
    c->add_option("--n", *n, "Polygon size")->required()->check(CLI::Range(3, kDiameterCap));
    r.commands.emplace_back(c, [=](const Context& ctx) {
        ctx.emit(Record{"diameter", {}}.num("n", *n).num("diameter", diameter(*n)));
        return kExitOk;
    });
}

void add_tree(Registry& r) {
    auto* c = r.add("tree", "Binary tree of a triangulation, rotation distance, or the inverse map");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>(), tree = std::make_shared<std::string>();
    auto* oa = c->add_option("--a", *a, "Triangulation file");
    c->add_option("--b", *b, "Second triangulation file; adds the rotation distance")->needs(oa);
    c->add_option("--tree", *tree, "Tree file (preorder I/E tokens); prints its triangulation")->excludes(oa);
    r.commands.emplace_back(c, [=](const Context& ctx) {
        if (!tree->empty()) {
            ctx.emit(io::triangulation_records(triangulation_from_tree(io::parse_tree(io::read_file(*tree)))));
            return kExitOk;
        }
        if (a->empty()) throw CLI::RequiredError("--a or --tree");
        auto t1 = load_tri(*a);
        auto b1 = tree_from_triangulation(t1);
        ctx.emit(Record{"tree", {}}.str("preorder", io::format_tree(b1)));
        if (!b->empty()) {
            auto b2 = tree_from_triangulation(load_tri(*b));
            ctx.emit(Record{"tree", {}}.str("preorder", io::format_tree(b2)));
            ctx.emit(Record{"rotation_distance", {}}.num("distance", rotation_distance(b1, b2)));
        }
        return kExitOk;
    });
}

struct PairOptions {
    std::shared_ptr<std::string> a = std::make_shared<std::string>();
    std::shared_ptr<std::string> b = std::make_shared<std::string>();
    std::shared_ptr<int> beta = std::make_shared<int>(1);

    void attach(CLI::App* c, bool with_beta, bool required = true) {
        auto* oa = c->add_option("--a", *a, "Initial triangulation file");
        auto* ob = c->add_option("--b", *b, "Target triangulation file");
        if (required) {
            oa->required();
            ob->required();
        }
        if (with_beta) c->add_option("--beta", *beta, "Blow-up factor")->check(CLI::Range(0, 1 << 20));
    }
    BlowupInstance instance() const {
        auto [t1, t2] = load_pair(*a, *b);
        return blow_up(t1, t2, *beta);
    }
};

void add_blowup(Registry& r) {
    auto* c = r.add("blowup", "Blow up every spine pair by beta inserted vertices");
    PairOptions p;
    auto dir = std::make_shared<std::string>();
    p.attach(c, true);
    c->add_option("--out-dir", *dir, "Write blown_t.tri and blown_tp.tri here");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto inst = p.instance();
        ctx.emit(Record{"blowup", {}}
                     .keyed("n", inst.base_n())
                     .keyed("gamma", inst.gamma())
                     .keyed("beta", inst.beta)
                     .keyed("blown", inst.blown_n()));
        for (int i = 0; i < inst.gamma(); ++i) {
            ctx.emit(Record{"inserted", {}}.num("idx", i).str("vertices", join(inst.new_vertices[i])));
        }
        if (dir->empty()) {
            ctx.emit(Record{"side", {}}.str("side", "T"));
            ctx.emit(io::triangulation_records(inst.blown_t));
            ctx.emit(Record{"side", {}}.str("side", "Tp"));
            ctx.emit(io::triangulation_records(inst.blown_tp));
        } else {
            for (auto [name, t] : {std::pair{"blown_t.tri", &inst.blown_t}, std::pair{"blown_tp.tri", &inst.blown_tp}}) {
                auto path = out_path(*dir, name);
                ctx.save(path, io::triangulation_records(*t));
                ctx.emit(Record{"wrote", {}}.str("path", path));
            }
        }
        return kExitOk;
    });
}

void add_conflict(Registry& r) {
    auto* c = r.add("conflict", "Spine pairs, their types and the conflict graph");
    PairOptions p;
    p.attach(c, false);
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto [t1, t2] = load_pair(*p.a, *p.b);
        auto pairs = spine_pairs(t1, t2);
        ctx.emit(io::conflict_records(pairs, conflict_graph(pairs)));
        return kExitOk;
    });
}

void add_acyclic(Registry& r) {
    auto* c = r.add("acyclic", "Maximum acyclic subset of a conflict graph");
    auto graph = std::make_shared<std::string>();
    auto heuristic = std::make_shared<bool>(false);
    c->add_option("--graph", *graph, "Conflict graph file")->required();
    c->add_flag("--heuristic", *heuristic, "Greedy peeling instead of branch and bound");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto file = io::parse_conflict(io::read_file(*graph));
        ctx.emit(io::acyclic_records(solve_acyclic(file.graph, *heuristic)));
        return kExitOk;
    });
}

void add_reduce(Registry& r) {
    auto* c = r.add("reduce", "Build the triangulation pair of a monotone planar 2SAT instance");
    auto sat = std::make_shared<std::string>(), dir = std::make_shared<std::string>();
    c->add_option("--sat", *sat, "2SAT instance file")->required();
    c->add_option("--out-dir", *dir, "Output directory for t1.tri, t2.tri, roles.map")->required();
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto phi = load_sat(*sat);
        auto red = build_reduction(phi);
        ctx.emit(Record{"reduce", {}}.keyed("n", red.t1.n()).keyed("gamma", static_cast<long long>(red.pairs.size())));
        const std::vector<std::pair<std::string, std::vector<Record>>> files{
            {"t1.tri", io::triangulation_records(red.t1)},
            {"t2.tri", io::triangulation_records(red.t2)},
            {"roles.map", io::role_records(red.roles)}};
        for (const auto& [name, recs] : files) {
            auto path = out_path(*dir, name);
            ctx.save(path, recs);
            ctx.emit(Record{"wrote", {}}.str("path", path));
        }
        return kExitOk;
    });
}

void add_verify(Registry& r) {
    auto* c = r.add("verify-gadgets", "Check the reduction's conflict inventory against the gadget rules");
    auto sat = std::make_shared<std::string>();
    auto equivalence = std::make_shared<bool>(false);
    c->add_option("--sat", *sat, "2SAT instance file")->required();
    c->add_flag("--equivalence", *equivalence, "Also compare ac(H) with w(m+1) + max satisfied clauses");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto phi = load_sat(*sat);
        auto red = build_reduction(phi);
        auto report = verify_gadget_conflicts(red, phi, conflict_graph(red.pairs));
        ctx.emit(Record{"gadgets", {}}
                     .str("status", report.clean() ? "clean" : "dirty")
                     .keyed("doubles", report.double_conflicts)
                     .keyed("directed", report.directed_conflicts)
                     .keyed("exceptions", report.exception_edges));
        for (const auto& issue : report.issues) {
            ctx.emit(Record{"issue", {}}
                         .str("kind", to_string(issue.kind))
                         .str("from", red.roles[issue.from].label())
                         .str("to", red.roles[issue.to].label()));
        }
        bool ok = report.clean();
        if (*equivalence) {
            auto eq = reduction_equivalence_check(phi);
            ctx.emit(Record{"equivalence", {}}
                         .keyed("ac", eq.ac)
                         .keyed("expected", eq.expected)
                         .str("status", eq.ok ? "ok" : "mismatch"));
            ok = ok && eq.ok;
        }
        return ok ? kExitOk : kExitValidation;
    });
}

void add_bound_upper(Registry& r) {
    auto* c = r.add("bound-upper", "Constructed flip sequence between the blown-up pair and its bound");
    PairOptions p;
    auto subset = std::make_shared<std::string>(), save = std::make_shared<std::string>();
    auto heuristic = std::make_shared<bool>(false);
    p.attach(c, true);
    auto* os = c->add_option("--subset", *subset, "Acyclic subset file (default: exact maximum)");
    c->add_flag("--heuristic", *heuristic, "Use the greedy acyclic subset")->excludes(os);
    c->add_option("--out", *save, "Write the sequence to this file");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto inst = p.instance();
        auto h = conflict_graph(inst);
        AcyclicResult s = subset->empty() ? solve_acyclic(h, *heuristic) : io::parse_acyclic(io::read_file(*subset));
        auto seq = construct_upper_sequence(inst, s);
        const auto report = bound_report(inst.base_n(), inst.gamma(), s.size, inst.beta);
        ctx.emit(Record{"bound", {}}.keyed("upper", report.upper_value));
        ctx.emit(Record{"length", {}}.num("length", static_cast<long long>(seq.steps.size())));
        ctx.emit(Record{"ac", {}}.num("size", s.size).str("mode", s.exact ? "exact" : "heur"));
        if (save->empty()) {
            ctx.emit(io::sequence_records(seq));
        } else {
            ctx.save(*save, io::sequence_records(seq));
        }
        return kExitOk;
    });
}

void add_bound_lower(Registry& r) {
    auto* c = r.add("bound-lower", "Lower bound value, from explicit parameters or from a pair");
    PairOptions p;
    auto n = std::make_shared<int>(-1), gamma = std::make_shared<int>(-1), ac = std::make_shared<int>(-1);
    p.attach(c, true, false);
    c->add_option("--n", *n, "Base polygon size");
    c->add_option("--gamma", *gamma, "Number of spine pairs");
    c->add_option("--ac", *ac, "Maximum acyclic subset size");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        BoundReport report;
        if (!p.a->empty() || !p.b->empty()) {
            auto inst = p.instance();
            const int size = max_acyclic_size(conflict_graph(inst));
            report = bound_report(inst.base_n(), inst.gamma(), size, inst.beta);
        } else {
            if (*n < 3 || *gamma < 0 || *ac < 0) throw CLI::ValidationError("need --a/--b or --n, --gamma and --ac");
            report = bound_report(*n, *gamma, *ac, *p.beta);
        }
        ctx.emit(Record{"bound", {}}.keyed("lower", report.lower_value));
        return kExitOk;
    });
}

void add_analyze(Registry& r) {
    auto* c = r.add("analyze", "Classify spine pairs as direct or indirect along a flip sequence");
    PairOptions p;
    auto seq = std::make_shared<std::string>();
    auto budget = std::make_shared<std::size_t>(kDefaultSearchBudget);
    p.attach(c, true);
    c->add_option("--seq", *seq, "Sequence file on the blown-up pair (default: an exact shortest sequence)");
    c->add_option("--budget", *budget, "Search budget when no sequence is given");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto inst = p.instance();
        FlipSequence f = seq->empty() ? exact_distance(inst.blown_t, inst.blown_tp, *budget).witness
                                      : io::parse_sequence(io::read_file(*seq));
        auto h = conflict_graph(inst);
        std::optional<int> ac;
        if (h.vertex_count <= kExactAcyclicCap) ac = max_acyclic_size(h);
        auto a = analyze_sequence(inst, f, ac);
        ctx.emit(io::analysis_records(a));
        const bool ok = a.ordering_violations.empty() && a.direct_bound_holds.value_or(true);
        return ok ? kExitOk : kExitValidation;
    });
}

void add_emit_theorem(Registry& r) {
    auto* c = r.add("emit-theorem", "Full-scale blown-up pair and distance threshold for a 2SAT instance");
    auto sat = std::make_shared<std::string>(), dir = std::make_shared<std::string>();
    c->add_option("--sat", *sat, "2SAT instance file")->required();
    c->add_option("--out-dir", *dir, "Output directory for theorem_t.tri and theorem_tp.tri")->required();
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto th = emit_theorem_instance(load_sat(*sat));
        ctx.emit(Record{"theorem", {}}
                     .keyed("base_n", th.base_n)
                     .keyed("gamma", th.gamma_size)
                     .keyed("beta", th.beta)
                     .keyed("n", th.t1.n())
                     .keyed("target_ac", th.target_ac)
                     .keyed("k", th.k));
        for (auto [name, t] : {std::pair{"theorem_t.tri", &th.t1}, std::pair{"theorem_tp.tri", &th.t2}}) {
            auto path = out_path(*dir, name);
            ctx.save(path, io::triangulation_records(*t));
            ctx.emit(Record{"wrote", {}}.str("path", path));
        }
        return kExitOk;
    });
}

void add_sandwich(Registry& r) {
    auto* c = r.add("sandwich", "Random trials of lower bound <= exact distance <= construction <= upper bound");
    auto n = std::make_shared<int>(6), beta = std::make_shared<int>(2), trials = std::make_shared<int>(50);
    auto max_blown = std::make_shared<int>(13);
    auto budget = std::make_shared<std::size_t>(kDefaultSearchBudget);
    c->add_option("--n", *n, "Base polygon size")->check(CLI::Range(3, kRandomCap));
    c->add_option("--beta", *beta, "Blow-up factor")->check(CLI::Range(0, 64));
    c->add_option("--trials", *trials, "Number of random base pairs")->check(CLI::Range(1, 1000000));
    c->add_option("--max-blown", *max_blown, "Resample pairs whose blow-up exceeds this many vertices");
    c->add_option("--budget", *budget, "Search budget per exact distance");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        std::mt19937_64 rng(ctx.seed);
        int violations = 0;
        for (int trial = 0; trial < *trials; ++trial) {
            std::optional<BlowupInstance> inst;
            for (int attempt = 0; attempt < 10000 && !inst; ++attempt) {
                auto t1 = random_triangulation(*n, rng);
                auto t2 = random_triangulation(*n, rng);
                if (*n + *beta * static_cast<int>(spine_pairs(t1, t2).size()) <= *max_blown) inst = blow_up(t1, t2, *beta);
            }
            if (!inst) throw PreconditionViolated("no random pair fits within --max-blown");
            auto s = max_acyclic_subset(conflict_graph(*inst));
            auto seq = construct_upper_sequence(*inst, s);
            const auto report = bound_report(inst->base_n(), inst->gamma(), s.size, inst->beta);
            const long long exact = exact_distance(inst->blown_t, inst->blown_tp, *budget).distance;
            const auto len = static_cast<long long>(seq.steps.size());
            const bool ok = !validate_sequence(seq, inst->blown_tp) && report.lower_value <= exact && exact <= len &&
                            len <= report.upper_value;
            violations += ok ? 0 : 1;
            ctx.emit(Record{"trial", {}}
                         .num("idx", trial)
                         .keyed("gamma", inst->gamma())
                         .keyed("ac", s.size)
                         .keyed("lower", report.lower_value)
                         .keyed("exact", exact)
                         .keyed("construct", len)
                         .keyed("upper", report.upper_value)
                         .str("status", ok ? "ok" : "violation"));
        }
        ctx.emit(Record{"sandwich", {}}.keyed("trials", *trials).keyed("violations", violations));
        return violations == 0 ? kExitOk : kExitValidation;
    });
}

void add_render_svg(Registry& r) {
    auto* c = r.add("render-svg", "Draw the linear representation of a pair (first above, second below the spine)");
    PairOptions p;
    auto save = std::make_shared<std::string>();
    p.attach(c, true);
    *p.beta = 0;
    c->add_option("--out", *save, "SVG file (default: standard output)");
    r.commands.emplace_back(c, [=](const Context& ctx) {
        auto inst = p.instance();
        auto svg = render_linear_svg(inst.blown_t, inst.blown_tp);
        if (save->empty()) {
            ctx.out << svg;
        } else {
            io::write_file(*save, svg);
            ctx.emit(Record{"wrote", {}}.str("path", *save));
        }
        return kExitOk;
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flip distance of convex polygon triangulations: exact search, blow-ups, conflict graphs, "
                 "the 2SAT reduction and distance bounds",
                 "flipdist"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string format = "text";
    unsigned long long seed = kDefaultSeed;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json-lines"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "Random seed")->capture_default_str();

    Registry reg{app, {}};
    add_enumerate(reg);
    add_distance(reg);
    add_diameter(reg);
    add_tree(reg);
    add_blowup(reg);
    add_conflict(reg);
    add_acyclic(reg);
    add_reduce(reg);
    add_verify(reg);
    add_bound_upper(reg);
    add_bound_lower(reg);
    add_analyze(reg);
    add_emit_theorem(reg);
    add_sandwich(reg);
    add_render_svg(reg);

    try {
        std::vector<std::string> reversed_args(args.rbegin(), args.rend());
        app.parse(reversed_args);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    Context ctx{out, format == "json-lines" ? Format::JsonLines : Format::Text, seed};
    try {
        for (auto& [sub, action] : reg.commands) {
            if (sub->parsed()) return action(ctx);
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace flipdist::cli
