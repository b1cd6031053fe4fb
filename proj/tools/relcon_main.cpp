// relcon: command-line front end over the relational-constraint library.
//
// Objects are looked up first among workspace bindings (--workspace files),
// then among the built-in bindings on the two-element domain, and finally,
// if the argument names an existing file, in that file (which must contain
// exactly one object of the expected kind).
//
// Exit codes: 0 success, 1 semantic no/absent answer, 2 usage or input
// error, 3 resource budget exceeded.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relcon/relcon.hpp"

namespace {

using namespace relcon;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

Workspace builtin_workspace() {
    Workspace w;
    FiniteDomain b("bool", 2);
    w.domains.emplace("bool", b);
    w.relations.emplace("Delta", disequality_relation(b));
    w.relations.emplace("Eq", equality_relation(b));
    w.relations.emplace("Leq", Relation(2, b, {Tuple({0, 0}, b), Tuple({0, 1}, b),
                                               Tuple({1, 1}, b)}));
    w.relations.emplace("Full1", full_relation(b, 1));
    w.relations.emplace("Full2", full_relation(b, 2));
    w.relations.emplace("Empty1", empty_relation(b, 1));
    w.relations.emplace("Empty2", empty_relation(b, 2));
    auto fn = [&](const std::string& name, int arity, std::vector<int> table) {
        w.functions.emplace(name, FiniteFunction(arity, b, b, std::move(table)));
    };
    fn("ID", 1, {0, 1});
    fn("NOT", 1, {1, 0});
    fn("C0", 1, {0, 0});
    fn("C1", 1, {1, 1});
    fn("E1", 2, {0, 0, 1, 1});
    fn("E2", 2, {0, 1, 0, 1});
    fn("AND", 2, {0, 0, 0, 1});
    fn("OR", 2, {0, 1, 1, 1});
    fn("XOR", 2, {0, 1, 1, 0});
    fn("NAND", 2, {1, 1, 1, 0});
    fn("NOR", 2, {1, 0, 0, 0});
    return w;
}

struct Session {
    Workspace ws;
    Workspace builtins = builtin_workspace();
    ExecConfig cfg;
    std::string format = "text";
    std::uint64_t seed = 1;

    void load(const std::vector<std::string>& files) {
        for (const std::string& path : files) {
            Workspace extra = parse_workspace_file(path);
            auto merge = [&](auto& into, const auto& from, const char* kind) {
                for (const auto& [name, value] : from) {
                    if (!into.emplace(name, value).second)
                        throw parse_error("duplicate " + std::string(kind) +
                                          " name '" + name +
                                          "' across workspace files", 0);
                }
            };
            merge(ws.domains, extra.domains, "domain");
            merge(ws.relations, extra.relations, "relation");
            merge(ws.functions, extra.functions, "function");
            merge(ws.constraints, extra.constraints, "constraint");
            merge(ws.schemes, extra.schemes, "scheme");
            merge(ws.labels, extra.labels, "labels");
            merge(ws.classes, extra.classes, "class");
        }
    }

    template <typename Map>
    const typename Map::mapped_type* lookup(const Map& primary, const Map& fallback,
                                            const std::string& name) const {
        if (auto it = primary.find(name); it != primary.end()) return &it->second;
        if (auto it = fallback.find(name); it != fallback.end()) return &it->second;
        return nullptr;
    }

    FiniteDomain domain(const std::string& name) const {
        if (auto* d = lookup(ws.domains, builtins.domains, name)) return *d;
        // a bare integer makes an anonymous domain of that size
        if (!name.empty() &&
            name.find_first_not_of("0123456789") == std::string::npos)
            return FiniteDomain(name, std::stoi(name));
        throw error("unknown domain '" + name + "'");
    }

    Relation relation(const std::string& name) const {
        if (auto* r = lookup(ws.relations, builtins.relations, name)) return *r;
        if (std::filesystem::exists(name)) {
            Workspace file = parse_workspace_file(name);
            if (file.relations.size() == 1) return file.relations.begin()->second;
            throw error("file '" + name + "' does not define exactly one relation");
        }
        throw error("unknown relation '" + name + "'");
    }

    FiniteFunction function(const std::string& name) const {
        if (auto* f = lookup(ws.functions, builtins.functions, name)) return *f;
        if (std::filesystem::exists(name)) {
            Workspace file = parse_workspace_file(name);
            if (file.functions.size() == 1) return file.functions.begin()->second;
            throw error("file '" + name + "' does not define exactly one function");
        }
        throw error("unknown function '" + name + "'");
    }

    MinorScheme scheme(const std::string& name) const {
        if (auto* s = lookup(ws.schemes, builtins.schemes, name)) return *s;
        if (std::filesystem::exists(name)) {
            Workspace file = parse_workspace_file(name);
            if (file.schemes.size() == 1) return file.schemes.begin()->second;
            throw error("file '" + name + "' does not define exactly one scheme");
        }
        throw error("unknown scheme '" + name + "'");
    }

    LabelSet label_set(const std::string& spec) const {
        if (auto* l = lookup(ws.labels, builtins.labels, spec)) return *l;
        // a space-separated list is an inline label set
        if (spec.find(' ') != std::string::npos) {
            std::istringstream in(spec);
            std::vector<std::string> labels{std::istream_iterator<std::string>(in),
                                            std::istream_iterator<std::string>()};
            return LabelSet(std::move(labels));
        }
        if (std::filesystem::exists(spec)) {
            Workspace file = parse_workspace_file(spec);
            if (file.labels.size() == 1) return file.labels.begin()->second;
            throw error("file '" + spec + "' does not define exactly one label set");
        }
        throw error("unknown label set '" + spec + "'");
    }

    /// Accepts a workspace constraint name or the literal form "(R,S)".
    Constraint constraint(const std::string& spec) const {
        if (!spec.empty() && spec.front() == '(') {
            if (spec.back() != ')')
                throw error("constraint literal must look like \"(R,S)\"");
            std::string inner = spec.substr(1, spec.size() - 2);
            auto comma = inner.find(',');
            if (comma == std::string::npos)
                throw error("constraint literal must look like \"(R,S)\"");
            std::string r = inner.substr(0, comma), s = inner.substr(comma + 1);
            return Constraint(relation(r), relation(s));
        }
        if (auto it = ws.constraints.find(spec); it != ws.constraints.end())
            return it->second.value;
        if (auto it = builtins.constraints.find(spec); it != builtins.constraints.end())
            return it->second.value;
        throw error("unknown constraint '" + spec + "'");
    }

    FunctionClass function_class(const std::string& class_name,
                                 const std::vector<std::string>& fns) const {
        if (!class_name.empty()) {
            if (auto it = ws.classes.find(class_name); it != ws.classes.end())
                return it->second.value;
            throw error("unknown class '" + class_name + "'");
        }
        if (fns.empty()) throw error("give --class <name> or --fns <f1> <f2> ...");
        std::vector<FiniteFunction> members;
        for (const std::string& f : fns) members.push_back(function(f));
        return FunctionClass(members[0].input_domain(), members[0].output_domain(),
                             members);
    }
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    int v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw error("expected integers in '" + text + "'");
    return out;
}

Tuple parse_tuple(const std::string& text, const FiniteDomain& d) {
    return Tuple(parse_int_list(text), d);
}

Matrix parse_matrix(const std::string& text, const FiniteDomain& d) {
    std::vector<Tuple> columns;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';'))
        columns.push_back(parse_tuple(part, d));
    return Matrix(std::move(columns));
}

SkolemMap parse_sigma(const std::string& text) {
    std::map<std::string, int> assignment;
    if (text.empty()) return SkolemMap(assignment);
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw error("Skolem assignment must look like v=0,w=1");
        assignment[part.substr(0, eq)] = std::stoi(part.substr(eq + 1));
    }
    return SkolemMap(std::move(assignment));
}

PartialFunction parse_partial(const std::string& text, int arity,
                              const FiniteDomain& a, const FiniteDomain& b) {
    std::map<std::uint64_t, int> graph;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw error("partial graph entries must look like \"0 1=1;...\"");
        Tuple point = parse_tuple(part.substr(0, eq), a);
        if (point.arity() != arity)
            throw error("partial graph point has the wrong arity");
        graph[encode_point(point, a)] = std::stoi(part.substr(eq + 1));
    }
    return PartialFunction(arity, a, b, std::move(graph));
}

void emit(const Session& session, const std::string& text, const json& j) {
    if (session.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite realization of the Galois theory between function "
                 "classes and relational constraints"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    Session session;
    std::vector<std::string> workspace_files;
    app.add_option("-w,--workspace", workspace_files,
                   "workspace file(s) to load (repeatable)");
    app.add_option("--format", session.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--max-table-bits", session.cfg.max_table_bits,
                   "budget: bits of one function table")
        ->envname("RELCON_MAX_TABLE_BITS")
        ->capture_default_str();
    app.add_option("--max-candidates", session.cfg.max_candidates,
                   "budget: candidates per search")
        ->envname("RELCON_MAX_CANDIDATES")
        ->capture_default_str();
    app.add_option("-j,--jobs", session.cfg.jobs, "worker threads")
        ->envname("RELCON_JOBS")
        ->capture_default_str();
    app.add_option("--seed", session.seed, "seed for randomized commands")
        ->capture_default_str();

    int exit_code = kExitYes;
    std::function<void()> run;

    // ---- satisfies ------------------------------------------------------
    auto* satisfies_cmd = app.add_subcommand(
        "satisfies", "does a (partial) function satisfy a constraint / "
                     "preserve a relation?");
    struct {
        std::string fn, constraint, relation, partial;
        int partial_arity = 1;
        std::string domain_a = "bool", domain_b = "bool";
        bool diagnose = false;
    } sat;
    satisfies_cmd->add_option("--fn", sat.fn, "function name");
    satisfies_cmd->add_option("--constraint", sat.constraint,
                              "constraint name or \"(R,S)\"");
    satisfies_cmd->add_option("--relation", sat.relation,
                              "relation name (preservation test)");
    satisfies_cmd->add_option("--partial", sat.partial,
                              "partial function graph, e.g. \"0 0=0;1 1=1\"");
    satisfies_cmd->add_option("--partial-arity", sat.partial_arity);
    satisfies_cmd->add_option("--domain-a", sat.domain_a);
    satisfies_cmd->add_option("--domain-b", sat.domain_b);
    satisfies_cmd->add_flag("--diagnose", sat.diagnose,
                            "print the first violating matrix");
    satisfies_cmd->callback([&] {
        run = [&] {
            bool answer = false;
            json j;
            std::string text;
            if (!sat.partial.empty()) {
                PartialFunction p = parse_partial(sat.partial, sat.partial_arity,
                                                  session.domain(sat.domain_a),
                                                  session.domain(sat.domain_b));
                answer = partial_satisfies(p, session.constraint(sat.constraint));
            } else if (!sat.relation.empty()) {
                answer = preserves(session.function(sat.fn),
                                   session.relation(sat.relation));
            } else {
                Constraint c = session.constraint(sat.constraint);
                FiniteFunction f = session.function(sat.fn);
                if (sat.diagnose) {
                    auto witness = violating_matrix(f, c);
                    answer = !witness.has_value();
                    if (witness) {
                        std::ostringstream out;
                        out << "violating matrix columns:\n";
                        for (const Tuple& col : witness->columns())
                            out << to_text(col) << "\n";
                        text = out.str();
                    }
                } else {
                    answer = satisfies(f, c);
                }
            }
            j = json{{"answer", answer}};
            emit(session, std::string(answer ? "true" : "false") + "\n" + text, j);
            exit_code = answer ? kExitYes : kExitNo;
        };
    });

    // ---- image ----------------------------------------------------------
    auto* image_cmd = app.add_subcommand(
        "image", "fR (image of a relation) or fM (application to a matrix)");
    struct {
        std::string fn, relation, matrix;
    } img;
    image_cmd->add_option("--fn", img.fn)->required();
    image_cmd->add_option("--relation", img.relation);
    image_cmd->add_option("--matrix", img.matrix,
                          "columns separated by ';', e.g. \"0 1;1 0\"");
    image_cmd->callback([&] {
        run = [&] {
            FiniteFunction f = session.function(img.fn);
            if (!img.matrix.empty()) {
                Tuple out = apply_to_matrix(
                    f, parse_matrix(img.matrix, f.input_domain()));
                emit(session, to_text(out) + "\n", to_json(out));
            } else {
                Relation out = image_of_relation(f, session.relation(img.relation));
                emit(session, to_text(out, "image"), to_json(out));
            }
        };
    });

    // ---- minor ----------------------------------------------------------
    auto* minor_cmd = app.add_subcommand(
        "minor", "tight conjunctive minors, simple minors, relaxations, "
                 "consequent intersection, canonical constraints, scheme "
                 "application");
    struct {
        std::string scheme;
        std::vector<std::string> relations, constraints, intersect;
        std::string check, relax_base, relax_antecedent, relax_consequent;
        std::string canonical, domain_a = "bool", domain_b = "bool";
        int arity = 1;
        std::string apply, sigma, domain = "bool";
        int map_index = 0;
    } mi;
    minor_cmd->add_option("--scheme", mi.scheme);
    minor_cmd->add_option("--relations", mi.relations, "relation family");
    minor_cmd->add_option("--constraints", mi.constraints, "constraint family");
    minor_cmd->add_option("--check", mi.check,
                          "constraint to test for being a conjunctive minor");
    minor_cmd->add_option("--relax", mi.relax_base, "constraint to relax");
    minor_cmd->add_option("--antecedent", mi.relax_antecedent);
    minor_cmd->add_option("--consequent", mi.relax_consequent);
    minor_cmd->add_option("--intersect", mi.intersect,
                          "constraints sharing an antecedent");
    minor_cmd->add_option("--canonical", mi.canonical,
                          "equality | empty | trivial")
        ->check(CLI::IsMember({"equality", "empty", "trivial"}));
    minor_cmd->add_option("--arity", mi.arity);
    minor_cmd->add_option("--domain-a", mi.domain_a);
    minor_cmd->add_option("--domain-b", mi.domain_b);
    minor_cmd->add_option("--apply", mi.apply, "target tuple for scheme_apply");
    minor_cmd->add_option("--sigma", mi.sigma, "Skolem map, e.g. v=0,w=1");
    minor_cmd->add_option("--map-index", mi.map_index);
    minor_cmd->add_option("--domain", mi.domain);
    minor_cmd->callback([&] {
        run = [&] {
            if (!mi.canonical.empty()) {
                FiniteDomain a = session.domain(mi.domain_a);
                FiniteDomain b = session.domain(mi.domain_b);
                Constraint c = mi.canonical == "equality"
                                   ? equality_constraint(a, b)
                                   : mi.canonical == "empty"
                                         ? empty_constraint(a, b, mi.arity)
                                         : trivial_constraint(a, b, mi.arity);
                emit(session, to_text(c, mi.canonical), to_json(c));
                return;
            }
            if (!mi.relax_base.empty()) {
                Constraint out = relax(session.constraint(mi.relax_base),
                                       session.relation(mi.relax_antecedent),
                                       session.relation(mi.relax_consequent));
                emit(session, to_text(out, "relaxed"), to_json(out));
                return;
            }
            if (!mi.intersect.empty()) {
                std::vector<Constraint> cs;
                for (const std::string& c : mi.intersect)
                    cs.push_back(session.constraint(c));
                Constraint out = intersect_consequents(cs);
                emit(session, to_text(out, "intersection"), to_json(out));
                return;
            }
            if (!mi.apply.empty()) {
                MinorScheme h = session.scheme(mi.scheme);
                if (mi.map_index < 0 ||
                    static_cast<std::size_t>(mi.map_index) >= h.family_size())
                    throw error("--map-index out of range");
                Tuple a = parse_tuple(mi.apply, session.domain(mi.domain));
                Tuple out = scheme_apply(a, parse_sigma(mi.sigma),
                                         h.maps()[static_cast<std::size_t>(
                                             mi.map_index)]);
                emit(session, to_text(out) + "\n", to_json(out));
                return;
            }
            MinorScheme h = session.scheme(mi.scheme);
            if (!mi.constraints.empty()) {
                std::vector<Constraint> cs;
                for (const std::string& c : mi.constraints)
                    cs.push_back(session.constraint(c));
                Constraint tight = tight_minor_constraint(h, cs, session.cfg);
                if (!mi.check.empty()) {
                    bool answer = is_conjunctive_minor(session.constraint(mi.check),
                                                       h, cs, session.cfg);
                    emit(session, std::string(answer ? "true" : "false") + "\n",
                         json{{"answer", answer}});
                    exit_code = answer ? kExitYes : kExitNo;
                } else {
                    emit(session, to_text(tight, "tight"), to_json(tight));
                }
            } else {
                std::vector<Relation> rels;
                for (const std::string& r : mi.relations)
                    rels.push_back(session.relation(r));
                Relation tight = tight_minor_relations(h, rels, session.cfg);
                emit(session, to_text(tight, "tight"), to_json(tight));
            }
        };
    });

    // ---- classify-minor -------------------------------------------------
    auto* classify_cmd = app.add_subcommand(
        "classify-minor", "is R restrictive/extensive/tight vs the tight minor?");
    struct {
        std::string relation, scheme;
        std::vector<std::string> relations;
    } cls;
    classify_cmd->add_option("--relation", cls.relation)->required();
    classify_cmd->add_option("--scheme", cls.scheme)->required();
    classify_cmd->add_option("--relations", cls.relations)->required();
    classify_cmd->callback([&] {
        run = [&] {
            std::vector<Relation> rels;
            for (const std::string& r : cls.relations)
                rels.push_back(session.relation(r));
            MinorClassification out = minor_classification(
                session.relation(cls.relation), session.scheme(cls.scheme), rels,
                session.cfg);
            emit(session, to_text(out), to_json(out));
        };
    });

    // ---- compose-schemes --------------------------------------------------
    auto* compose_cmd = app.add_subcommand("compose-schemes",
                                           "composite of an outer scheme with "
                                           "one inner scheme per map");
    struct {
        std::string outer;
        std::vector<std::string> inner;
    } cmp;
    compose_cmd->add_option("--outer", cmp.outer)->required();
    compose_cmd->add_option("--inner", cmp.inner)->required();
    compose_cmd->callback([&] {
        run = [&] {
            std::vector<MinorScheme> inner;
            for (const std::string& s : cmp.inner)
                inner.push_back(session.scheme(s));
            MinorScheme out = compose_schemes(session.scheme(cmp.outer), inner);
            emit(session, to_text(out, "composite"), to_json(out));
        };
    });

    // ---- svs-close --------------------------------------------------------
    auto* svs_cmd = app.add_subcommand(
        "svs-close", "closure under simple variable substitutions; single "
                     "substitutions; the literal local-closure operator");
    struct {
        std::string class_name, fn, map;
        std::vector<std::string> fns;
        int bound = 2;
        int target = 0;
        bool local = false;
    } svs;
    svs_cmd->add_option("--class", svs.class_name);
    svs_cmd->add_option("--fns", svs.fns, "ad hoc class members");
    svs_cmd->add_option("--bound", svs.bound, "target arity bound");
    svs_cmd->add_option("--fn", svs.fn, "single function to substitute into");
    svs_cmd->add_option("--map", svs.map,
                        "index map images, e.g. \"0 0\" for diagonalization");
    svs_cmd->add_option("--target", svs.target,
                        "target arity of the index map (default: max image + 1)");
    svs_cmd->add_flag("--local", svs.local, "apply the local-closure operator");
    svs_cmd->callback([&] {
        run = [&] {
            if (!svs.fn.empty()) {
                FiniteFunction f = session.function(svs.fn);
                std::vector<int> images = parse_int_list(svs.map);
                int target = svs.target;
                if (target == 0)
                    for (int i : images) target = std::max(target, i + 1);
                FiniteFunction g = substitute(
                    f, IndexMap(f.arity(), target, images));
                emit(session, to_text(g, "substituted"), to_json(g));
                return;
            }
            FunctionClass k = session.function_class(svs.class_name, svs.fns);
            FunctionClass out = svs.local
                                    ? local_closure_functions(k, session.cfg)
                                    : svs_closure(k, svs.bound);
            emit(session, to_text(out, "closure"), to_json(out));
        };
    });

    // ---- clone ------------------------------------------------------------
    auto* clone_cmd = app.add_subcommand(
        "clone", "clone generated by a set of operations; composition");
    struct {
        std::string class_name;
        std::vector<std::string> fns, compose;
        int bound = 2;
    } cl;
    clone_cmd->add_option("--class", cl.class_name);
    clone_cmd->add_option("--fns", cl.fns);
    clone_cmd->add_option("--bound", cl.bound);
    clone_cmd->add_option("--compose", cl.compose,
                          "outer function followed by the inner functions");
    clone_cmd->callback([&] {
        run = [&] {
            if (!cl.compose.empty()) {
                if (cl.compose.size() < 2)
                    throw error("--compose needs an outer and at least one "
                                "inner function");
                FiniteFunction f = session.function(cl.compose[0]);
                std::vector<FiniteFunction> gs;
                for (std::size_t i = 1; i < cl.compose.size(); ++i)
                    gs.push_back(session.function(cl.compose[i]));
                FiniteFunction out = compose_functions(f, gs);
                emit(session, to_text(out, "composed"), to_json(out));
                return;
            }
            FunctionClass f = cl.fns.empty() && cl.class_name.empty()
                                  ? FunctionClass(session.domain("bool"),
                                                  session.domain("bool"))
                                  : session.function_class(cl.class_name, cl.fns);
            FunctionClass out = clone_generate(f, cl.bound, session.cfg);
            const std::string note =
                "note: compositions passing through arities above " +
                std::to_string(cl.bound) +
                " are not explored; this may under-approximate the clone "
                "restricted to the bound";
            json j = to_json(out);
            j["note"] = note;
            emit(session, to_text(out, "clone") + note + "\n", j);
        };
    });

    // ---- pol --------------------------------------------------------------
    auto* pol_cmd = app.add_subcommand(
        "pol", "operations preserving every given relation; with "
               "--constraint-set, the functions satisfying a constraint set");
    struct {
        std::vector<std::string> relations, constraint_set;
        std::string domain = "bool";
        int bound = 2;
    } po;
    pol_cmd->add_option("--relations", po.relations);
    pol_cmd->add_option("--constraint-set", po.constraint_set,
                        "constraints defining a general A-to-B class");
    pol_cmd->add_option("--domain", po.domain);
    pol_cmd->add_option("--bound", po.bound);
    pol_cmd->callback([&] {
        run = [&] {
            if (!po.constraint_set.empty()) {
                std::vector<Constraint> cs;
                for (const std::string& c : po.constraint_set)
                    cs.push_back(session.constraint(c));
                ConstraintSet t(cs[0].antecedent().domain(),
                                cs[0].consequent().domain(), cs);
                FunctionClass out = functions_satisfying(t, po.bound, session.cfg);
                emit(session, to_text(out, "satisfying"), to_json(out));
                return;
            }
            std::vector<Relation> rels;
            for (const std::string& r : po.relations)
                rels.push_back(session.relation(r));
            FunctionClass out = pol(rels, session.domain(po.domain), po.bound,
                                    session.cfg);
            emit(session, to_text(out, "pol"), to_json(out));
        };
    });

    // ---- inv --------------------------------------------------------------
    auto* inv_cmd = app.add_subcommand(
        "inv", "relations preserved by every given operation; with --general, "
               "the constraints satisfied by a class");
    struct {
        std::string class_name;
        std::vector<std::string> fns;
        int bound = 2;
        bool general = false;
    } iv;
    inv_cmd->add_option("--class", iv.class_name);
    inv_cmd->add_option("--fns", iv.fns);
    inv_cmd->add_option("--bound", iv.bound);
    inv_cmd->add_flag("--general", iv.general,
                      "constraints_satisfied_by instead of inv");
    inv_cmd->callback([&] {
        run = [&] {
            FunctionClass k = session.function_class(iv.class_name, iv.fns);
            if (iv.general) {
                ConstraintSet out = constraints_satisfied_by(k, iv.bound,
                                                             session.cfg);
                emit(session, to_text(out, "satisfied"), to_json(out));
                return;
            }
            std::vector<Relation> rels = inv(k, iv.bound, session.cfg);
            std::ostringstream text;
            json j = json::array();
            for (std::size_t i = 0; i < rels.size(); ++i) {
                text << to_text(rels[i], "inv." + std::to_string(i));
                j.push_back(to_json(rels[i]));
            }
            emit(session, text.str(), j);
        };
    });

    // ---- superpose ----------------------------------------------------------
    auto* superpose_cmd = app.add_subcommand(
        "superpose", "general superposition of a relation family; "
                     "--equality-pattern for R_b^=");
    struct {
        std::string labels, b, domain = "bool";
        std::vector<std::string> bs, relations;
        bool pattern_only = false;
    } sup;
    superpose_cmd->add_option("--labels", sup.labels);
    superpose_cmd->add_option("--b", sup.b, "target label tuple, e.g. \"p q\"");
    superpose_cmd->add_option("--bs", sup.bs, "one label tuple per relation");
    superpose_cmd->add_option("--relations", sup.relations);
    superpose_cmd->add_option("--domain", sup.domain);
    superpose_cmd->add_flag("--equality-pattern", sup.pattern_only);
    superpose_cmd->callback([&] {
        run = [&] {
            std::istringstream bin(sup.b);
            std::vector<std::string> b{std::istream_iterator<std::string>(bin),
                                       std::istream_iterator<std::string>()};
            if (sup.pattern_only) {
                Relation out = equality_pattern_relation(
                    b, session.domain(sup.domain));
                emit(session, to_text(out, "pattern"), to_json(out));
                return;
            }
            LabelSet labels = session.label_set(sup.labels);
            std::vector<std::vector<std::string>> bs;
            for (const std::string& row : sup.bs) {
                std::istringstream rin(row);
                bs.push_back({std::istream_iterator<std::string>(rin),
                              std::istream_iterator<std::string>()});
            }
            std::vector<Relation> rels;
            for (const std::string& r : sup.relations)
                rels.push_back(session.relation(r));
            Relation out = general_superposition(rels, b, bs, labels, session.cfg);
            emit(session, to_text(out, "superposition"), to_json(out));
        };
    });

    // ---- decompose-superposition -----------------------------------------
    auto* decompose_cmd = app.add_subcommand(
        "decompose-superposition",
        "superposition as tight minor intersected with an equality pattern");
    struct {
        std::string labels, b;
        std::vector<std::string> bs, relations;
    } dec;
    decompose_cmd->add_option("--labels", dec.labels)->required();
    decompose_cmd->add_option("--b", dec.b)->required();
    decompose_cmd->add_option("--bs", dec.bs)->required();
    decompose_cmd->add_option("--relations", dec.relations)->required();
    decompose_cmd->callback([&] {
        run = [&] {
            std::istringstream bin(dec.b);
            std::vector<std::string> b{std::istream_iterator<std::string>(bin),
                                       std::istream_iterator<std::string>()};
            std::vector<std::vector<std::string>> bs;
            for (const std::string& row : dec.bs) {
                std::istringstream rin(row);
                bs.push_back({std::istream_iterator<std::string>(rin),
                              std::istream_iterator<std::string>()});
            }
            std::vector<Relation> rels;
            for (const std::string& r : dec.relations)
                rels.push_back(session.relation(r));
            SuperpositionDecomposition out = superposition_decomposition(
                b, bs, session.label_set(dec.labels), rels, session.cfg);
            emit(session, to_text(out), to_json(out));
            exit_code = out.matches ? kExitYes : kExitNo;
        };
    });

    // ---- separate-constraint ----------------------------------------------
    auto* sep_c_cmd = app.add_subcommand(
        "separate-constraint",
        "constraint satisfied by a substitution-closed class and violated by "
        "a given function");
    struct {
        std::string class_name, fn;
        std::vector<std::string> fns;
    } sc;
    sep_c_cmd->add_option("--class", sc.class_name);
    sep_c_cmd->add_option("--fns", sc.fns);
    sep_c_cmd->add_option("--fn", sc.fn)->required();
    sep_c_cmd->callback([&] {
        run = [&] {
            FunctionClass k = session.function_class(sc.class_name, sc.fns);
            ConstraintSeparation out = separating_constraint(
                k, session.function(sc.fn), session.cfg);
            if (out.found()) {
                emit(session, to_text(*out.witness, "separating"),
                     to_json(*out.witness));
            } else {
                emit(session, std::string("absent: ") + to_text(out.status) + "\n",
                     json{{"status", to_text(out.status)}});
                exit_code = kExitNo;
            }
        };
    });

    // ---- separate-function --------------------------------------------------
    auto* sep_f_cmd = app.add_subcommand(
        "separate-function",
        "function satisfying a constraint set and violating a constraint");
    struct {
        std::vector<std::string> members, from_class;
        std::string constraint;
        int bound = 2;
    } sf;
    sep_f_cmd->add_option("--members", sf.members, "explicit constraint set");
    sep_f_cmd->add_option("--from-class", sf.from_class,
                          "take the set of all constraints (up to --bound) "
                          "satisfied by these functions");
    sep_f_cmd->add_option("--bound", sf.bound);
    sep_f_cmd->add_option("--constraint", sf.constraint)->required();
    sep_f_cmd->callback([&] {
        run = [&] {
            Constraint c = session.constraint(sf.constraint);
            std::optional<ConstraintSet> t;
            if (!sf.from_class.empty()) {
                FunctionClass k = session.function_class("", sf.from_class);
                t = constraints_satisfied_by(k, sf.bound, session.cfg);
            } else {
                std::vector<Constraint> cs;
                for (const std::string& m : sf.members)
                    cs.push_back(session.constraint(m));
                if (cs.empty()) throw error("give --members or --from-class");
                t = ConstraintSet(cs[0].antecedent().domain(),
                                  cs[0].consequent().domain(), cs);
            }
            FunctionSeparation out = separating_function(*t, c, session.cfg);
            if (out.found()) {
                emit(session, to_text(*out.witness, "separating"),
                     to_json(*out.witness));
            } else {
                emit(session, std::string("absent: ") + to_text(out.status) + "\n",
                     json{{"status", to_text(out.status)}});
                exit_code = kExitNo;
            }
        };
    });

    // ---- roundtrip -----------------------------------------------------------
    auto* roundtrip_cmd = app.add_subcommand(
        "roundtrip", "separate every non-member of a substitution-closed class; "
                     "--local-constraints applies the literal local-closure "
                     "operator to a constraint set");
    struct {
        std::string class_name;
        std::vector<std::string> fns, local_constraints;
        int bound = 2;
    } rt;
    roundtrip_cmd->add_option("--class", rt.class_name);
    roundtrip_cmd->add_option("--fns", rt.fns);
    roundtrip_cmd->add_option("--bound", rt.bound);
    roundtrip_cmd->add_option("--local-constraints", rt.local_constraints);
    roundtrip_cmd->callback([&] {
        run = [&] {
            if (!rt.local_constraints.empty()) {
                std::vector<Constraint> cs;
                for (const std::string& c : rt.local_constraints)
                    cs.push_back(session.constraint(c));
                ConstraintSet t(cs[0].antecedent().domain(),
                                cs[0].consequent().domain(), cs);
                ConstraintSet out = local_closure_constraints(t, session.cfg);
                emit(session, to_text(out, "closure"), to_json(out));
                return;
            }
            FunctionClass k = session.function_class(rt.class_name, rt.fns);
            GaloisRoundtripReport report = galois_roundtrip_report(k, rt.bound,
                                                                   session.cfg);
            emit(session, to_text(report), to_json(report));
            exit_code = report.all_separated() ? kExitYes : kExitNo;
        };
    });

    // ---- prop1-harness ---------------------------------------------------
    auto* prop1_cmd = app.add_subcommand(
        "prop1-harness", "closure properties of the constraints satisfied by "
                         "an extensible family of partial functions");
    struct {
        std::string family = "injective";
        std::string domain_a = "bool", domain_b = "bool";
        int max_arity = 1;
        int bound = 2;
        std::size_t trials = 100;
        bool check_extensible = false;
    } p1;
    prop1_cmd->add_option("--family", p1.family, "injective | all")
        ->check(CLI::IsMember({"injective", "all"}));
    prop1_cmd->add_option("--domain-a", p1.domain_a);
    prop1_cmd->add_option("--domain-b", p1.domain_b);
    prop1_cmd->add_option("--max-arity", p1.max_arity,
                          "family contains all arities up to this");
    prop1_cmd->add_option("--bound", p1.bound, "constraint arity bound");
    prop1_cmd->add_option("--trials", p1.trials);
    prop1_cmd->add_flag("--check-extensible", p1.check_extensible,
                        "only test extensibility");
    prop1_cmd->callback([&] {
        run = [&] {
            FiniteDomain a = session.domain(p1.domain_a);
            FiniteDomain b = session.domain(p1.domain_b);
            std::vector<PartialFunction> members;
            for (int n = 1; n <= p1.max_arity; ++n) {
                auto batch = p1.family == "injective"
                                 ? injective_partial_functions(a, b, n)
                                 : all_partial_functions(a, b, n);
                members.insert(members.end(), batch.begin(), batch.end());
            }
            PartialFamily family(a, b, std::move(members));
            if (p1.check_extensible) {
                ExtensibilityResult ext = is_extensible_family(family);
                std::ostringstream text;
                text << (ext.extensible ? "extensible" : "not extensible") << "\n";
                json j{{"extensible", ext.extensible}};
                if (ext.counterexample) {
                    text << "member:\n"
                         << to_text(ext.counterexample->first, "p")
                         << "unreachable point: "
                         << to_text(ext.counterexample->second) << "\n";
                    j["counterexample"] = {
                        {"member", to_json(ext.counterexample->first)},
                        {"point", to_json(ext.counterexample->second)}};
                }
                emit(session, text.str(), j);
                exit_code = ext.extensible ? kExitYes : kExitNo;
                return;
            }
            Prop1Report report = proposition1_harness(family, p1.trials, p1.bound,
                                                      session.seed, session.cfg);
            emit(session, to_text(report), to_json(report));
            exit_code = report.ok() ? kExitYes : kExitNo;
        };
    });

    // ---- oracle ---------------------------------------------------------
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "naive reference implementations (must agree byte-for-byte "
                  "with the optimized paths)");
    oracle_cmd->require_subcommand(1);
    auto* o_image = oracle_cmd->add_subcommand("image", "naive fR");
    struct {
        std::string fn, relation;
    } oi;
    o_image->add_option("--fn", oi.fn)->required();
    o_image->add_option("--relation", oi.relation)->required();
    o_image->callback([&] {
        run = [&] {
            Relation out = oracle::image(session.function(oi.fn),
                                         session.relation(oi.relation));
            emit(session, to_text(out, "image"), to_json(out));
        };
    });
    auto* o_minor = oracle_cmd->add_subcommand("tight-minor", "naive tight minor");
    struct {
        std::string scheme;
        std::vector<std::string> relations;
    } om;
    o_minor->add_option("--scheme", om.scheme)->required();
    o_minor->add_option("--relations", om.relations)->required();
    o_minor->callback([&] {
        run = [&] {
            std::vector<Relation> rels;
            for (const std::string& r : om.relations)
                rels.push_back(session.relation(r));
            Relation out = oracle::tight_minor(session.scheme(om.scheme), rels);
            emit(session, to_text(out, "tight"), to_json(out));
        };
    });
    auto* o_sup = oracle_cmd->add_subcommand("superpose", "naive superposition");
    struct {
        std::string labels, b;
        std::vector<std::string> bs, relations;
    } os;
    o_sup->add_option("--labels", os.labels)->required();
    o_sup->add_option("--b", os.b)->required();
    o_sup->add_option("--bs", os.bs)->required();
    o_sup->add_option("--relations", os.relations)->required();
    o_sup->callback([&] {
        run = [&] {
            std::istringstream bin(os.b);
            std::vector<std::string> b{std::istream_iterator<std::string>(bin),
                                       std::istream_iterator<std::string>()};
            std::vector<std::vector<std::string>> bs;
            for (const std::string& row : os.bs) {
                std::istringstream rin(row);
                bs.push_back({std::istream_iterator<std::string>(rin),
                              std::istream_iterator<std::string>()});
            }
            std::vector<Relation> rels;
            for (const std::string& r : os.relations)
                rels.push_back(session.relation(r));
            Relation out = oracle::superposition(rels, b, bs,
                                                 session.label_set(os.labels));
            emit(session, to_text(out, "superposition"), to_json(out));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitYes : kExitUsage;
    }

    try {
        session.load(workspace_files);
        if (run) run();
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
