#ifndef RELCON_WORKSPACE_HPP
#define RELCON_WORKSPACE_HPP

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relcon/clones.hpp"
#include "relcon/core.hpp"
#include "relcon/io.hpp"
#include "relcon/minors.hpp"
#include "relcon/substitution.hpp"

namespace relcon {

/// A constraint binding remembers the relation names it was built from so
/// that serialization round-trips exactly.
struct NamedConstraint {
    std::string antecedent_name;
    std::string consequent_name;
    Constraint value;

    friend bool operator==(const NamedConstraint&, const NamedConstraint&) = default;
};

struct NamedClass {
    std::vector<std::string> member_names;
    FunctionClass value;

    friend bool operator==(const NamedClass&, const NamedClass&) = default;
};

/// Named bindings loaded from workspace files. Names are unique per kind;
/// every binding is fully validated against its declared domains.
struct Workspace {
    std::map<std::string, FiniteDomain> domains;
    std::map<std::string, Relation> relations;
    std::map<std::string, FiniteFunction> functions;
    std::map<std::string, NamedConstraint> constraints;
    std::map<std::string, MinorScheme> schemes;
    std::map<std::string, LabelSet> labels;
    std::map<std::string, NamedClass> classes;

    friend bool operator==(const Workspace&, const Workspace&) = default;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string token;
    while (in >> token) out.push_back(token);
    return out;
}

inline int parse_int(const std::string& token, int line) {
    try {
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw parse_error("expected an integer, got '" + token + "'", line);
    }
}

inline bool looks_like_target_entry(const std::string& token) {
    if (token.size() < 2 || token[0] != 't') return false;
    for (std::size_t i = 1; i < token.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
    return true;
}

} // namespace detail

/// Parses the line-oriented workspace grammar:
///
///   domain <name> <size>
///   relation <name> <arity> <domain>      followed by one tuple per line,
///                                         terminated by a blank line
///   function <name> <arity> <domA> <domB> followed by |A|^arity table
///                                         values in row-major input order
///   constraint <name> <antecedentRel> <consequentRel>
///   scheme <name> target <m> indet <v1> <v2> ...
///   map <entries>                         entries are t<i> or an
///                                         indeterminate name
///   labels <name> <l1> <l2> ...
///   class <name> <fn1> <fn2> ...
///
/// '#' starts a comment. Errors carry the offending line number and name.
inline Workspace parse_workspace(const std::string& text) {
    Workspace w;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    enum class Mode { top, relation_tuples, function_table };
    Mode mode = Mode::top;

    // pending relation
    std::string rel_name;
    int rel_arity = 0;
    FiniteDomain rel_domain;
    std::vector<Tuple> rel_tuples;
    // pending function
    std::string fn_name;
    int fn_arity = 0;
    FiniteDomain fn_a, fn_b;
    std::uint64_t fn_expected = 0;
    std::vector<int> fn_table;
    // pending scheme
    bool scheme_open = false;
    std::string scheme_name;
    int scheme_target = 0;
    std::vector<std::string> scheme_indets;
    std::vector<std::vector<SchemeEntry>> scheme_maps;

    auto domain_of = [&](const std::string& name, int line) -> const FiniteDomain& {
        auto it = w.domains.find(name);
        if (it == w.domains.end())
            throw parse_error("unknown domain '" + name + "'", line);
        return it->second;
    };
    auto check_fresh = [&](const auto& map, const std::string& name, int line,
                           const char* kind) {
        if (map.count(name))
            throw parse_error(std::string("duplicate ") + kind + " name '" +
                              name + "'", line);
    };
    auto finish_relation = [&](int line) {
        try {
            w.relations.emplace(rel_name,
                                Relation(rel_arity, rel_domain, rel_tuples));
        } catch (const mismatch_error& e) {
            throw parse_error("relation '" + rel_name + "': " + e.what(), line);
        }
        rel_tuples.clear();
        mode = Mode::top;
    };
    auto finish_function = [&](int line) {
        if (fn_table.size() != fn_expected)
            throw parse_error("function '" + fn_name + "' table has " +
                              std::to_string(fn_table.size()) + " of " +
                              std::to_string(fn_expected) + " values", line);
        try {
            w.functions.emplace(fn_name,
                                FiniteFunction(fn_arity, fn_a, fn_b, fn_table));
        } catch (const mismatch_error& e) {
            throw parse_error("function '" + fn_name + "': " + e.what(), line);
        }
        fn_table.clear();
        mode = Mode::top;
    };
    auto finish_scheme = [&](int line) {
        if (!scheme_open) return;
        if (scheme_maps.empty())
            throw parse_error("scheme '" + scheme_name + "' has no map lines",
                              line);
        try {
            w.schemes.emplace(scheme_name, MinorScheme(scheme_target, scheme_indets,
                                                       scheme_maps));
        } catch (const mismatch_error& e) {
            throw parse_error("scheme '" + scheme_name + "': " + e.what(), line);
        }
        scheme_open = false;
        scheme_indets.clear();
        scheme_maps.clear();
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::vector<std::string> tok = detail::split_ws(line);
        const bool originally_blank =
            raw.find_first_not_of(" \t\r") == std::string::npos;
        if (tok.empty()) {
            if (!originally_blank) continue; // pure comment line
            if (mode == Mode::relation_tuples) finish_relation(line_no);
            else if (mode == Mode::function_table) finish_function(line_no);
            finish_scheme(line_no);
            continue;
        }

        if (mode == Mode::relation_tuples) {
            std::vector<int> entries;
            for (const std::string& t : tok)
                entries.push_back(detail::parse_int(t, line_no));
            if (static_cast<int>(entries.size()) != rel_arity)
                throw parse_error("tuple has " + std::to_string(entries.size()) +
                                  " entries, relation '" + rel_name +
                                  "' has arity " + std::to_string(rel_arity),
                                  line_no);
            try {
                rel_tuples.push_back(Tuple(std::move(entries), rel_domain));
            } catch (const mismatch_error& e) {
                throw parse_error("relation '" + rel_name + "': " + e.what(),
                                  line_no);
            }
            continue;
        }
        if (mode == Mode::function_table) {
            for (const std::string& t : tok) {
                if (fn_table.size() == fn_expected)
                    throw parse_error("function '" + fn_name +
                                      "' has extra table values", line_no);
                fn_table.push_back(detail::parse_int(t, line_no));
            }
            if (fn_table.size() == fn_expected) finish_function(line_no);
            continue;
        }

        const std::string& kw = tok[0];
        if (kw == "map") {
            if (!scheme_open)
                throw parse_error("map line outside a scheme block", line_no);
            if (tok.size() < 2)
                throw parse_error("map line needs at least one entry", line_no);
            std::vector<SchemeEntry> entries;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (detail::looks_like_target_entry(tok[i]))
                    entries.push_back(SchemeEntry::target(
                        detail::parse_int(tok[i].substr(1), line_no)));
                else
                    entries.push_back(SchemeEntry::indeterminate(tok[i]));
            }
            scheme_maps.push_back(std::move(entries));
            continue;
        }
        finish_scheme(line_no);

        if (kw == "domain") {
            if (tok.size() != 3)
                throw parse_error("usage: domain <name> <size>", line_no);
            check_fresh(w.domains, tok[1], line_no, "domain");
            try {
                w.domains.emplace(tok[1],
                                  FiniteDomain(tok[1],
                                               detail::parse_int(tok[2], line_no)));
            } catch (const mismatch_error& e) {
                throw parse_error(e.what(), line_no);
            }
        } else if (kw == "relation") {
            if (tok.size() != 4)
                throw parse_error("usage: relation <name> <arity> <domain>",
                                  line_no);
            check_fresh(w.relations, tok[1], line_no, "relation");
            rel_name = tok[1];
            rel_arity = detail::parse_int(tok[2], line_no);
            if (rel_arity < 1)
                throw parse_error("relation arity must be positive", line_no);
            rel_domain = domain_of(tok[3], line_no);
            mode = Mode::relation_tuples;
        } else if (kw == "function") {
            if (tok.size() != 5)
                throw parse_error("usage: function <name> <arity> <domA> <domB>",
                                  line_no);
            check_fresh(w.functions, tok[1], line_no, "function");
            fn_name = tok[1];
            fn_arity = detail::parse_int(tok[2], line_no);
            if (fn_arity < 1)
                throw parse_error("function arity must be positive", line_no);
            fn_a = domain_of(tok[3], line_no);
            fn_b = domain_of(tok[4], line_no);
            fn_expected = 1;
            for (int i = 0; i < fn_arity; ++i)
                fn_expected *= static_cast<std::uint64_t>(fn_a.size());
            mode = Mode::function_table;
        } else if (kw == "constraint") {
            if (tok.size() != 4)
                throw parse_error("usage: constraint <name> <antecedentRel> "
                                  "<consequentRel>", line_no);
            check_fresh(w.constraints, tok[1], line_no, "constraint");
            auto ra = w.relations.find(tok[2]);
            auto rs = w.relations.find(tok[3]);
            if (ra == w.relations.end())
                throw parse_error("unknown relation '" + tok[2] + "'", line_no);
            if (rs == w.relations.end())
                throw parse_error("unknown relation '" + tok[3] + "'", line_no);
            try {
                w.constraints.emplace(
                    tok[1], NamedConstraint{tok[2], tok[3],
                                            Constraint(ra->second, rs->second)});
            } catch (const mismatch_error& e) {
                throw parse_error("constraint '" + tok[1] + "': " + e.what(),
                                  line_no);
            }
        } else if (kw == "scheme") {
            if (tok.size() < 4 || tok[2] != "target")
                throw parse_error("usage: scheme <name> target <m> indet "
                                  "<v1> <v2> ...", line_no);
            check_fresh(w.schemes, tok[1], line_no, "scheme");
            scheme_name = tok[1];
            scheme_target = detail::parse_int(tok[3], line_no);
            scheme_indets.clear();
            if (tok.size() > 4) {
                if (tok[4] != "indet")
                    throw parse_error("expected 'indet' after the target arity",
                                      line_no);
                for (std::size_t i = 5; i < tok.size(); ++i) {
                    if (detail::looks_like_target_entry(tok[i]))
                        throw parse_error("indeterminate name '" + tok[i] +
                                          "' would be read as a target entry",
                                          line_no);
                    scheme_indets.push_back(tok[i]);
                }
            }
            scheme_maps.clear();
            scheme_open = true;
        } else if (kw == "labels") {
            if (tok.size() < 3)
                throw parse_error("usage: labels <name> <l1> <l2> ...", line_no);
            check_fresh(w.labels, tok[1], line_no, "labels");
            try {
                w.labels.emplace(tok[1],
                                 LabelSet(std::vector<std::string>(tok.begin() + 2,
                                                                   tok.end())));
            } catch (const mismatch_error& e) {
                throw parse_error(e.what(), line_no);
            }
        } else if (kw == "class") {
            if (tok.size() < 2)
                throw parse_error("usage: class <name> <fn1> <fn2> ...", line_no);
            check_fresh(w.classes, tok[1], line_no, "class");
            std::vector<FiniteFunction> members;
            std::vector<std::string> names(tok.begin() + 2, tok.end());
            for (const std::string& fn : names) {
                auto it = w.functions.find(fn);
                if (it == w.functions.end())
                    throw parse_error("unknown function '" + fn + "'", line_no);
                members.push_back(it->second);
            }
            if (members.empty())
                throw parse_error("class '" + tok[1] + "' needs at least one "
                                  "member function to fix its domains", line_no);
            try {
                w.classes.emplace(
                    tok[1],
                    NamedClass{std::move(names),
                               FunctionClass(members[0].input_domain(),
                                             members[0].output_domain(), members)});
            } catch (const mismatch_error& e) {
                throw parse_error("class '" + tok[1] + "': " + e.what(), line_no);
            }
        } else {
            throw parse_error("unknown directive '" + kw + "'", line_no);
        }
    }
    if (mode == Mode::relation_tuples) finish_relation(line_no);
    else if (mode == Mode::function_table) finish_function(line_no);
    finish_scheme(line_no);
    return w;
}

inline Workspace parse_workspace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error("cannot open workspace file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_workspace(buf.str());
    } catch (parse_error& e) {
        throw parse_error(path + ": " + e.what(), e.line());
    }
}

/// Canonical text form: kinds in a fixed order, names sorted within each
/// kind. parse(serialize(w)) == w.
inline std::string serialize_workspace(const Workspace& w) {
    std::ostringstream out;
    for (const auto& [name, d] : w.domains) out << to_text(d);
    if (!w.domains.empty()) out << "\n";
    for (const auto& [name, r] : w.relations) out << to_text(r, name);
    for (const auto& [name, f] : w.functions) out << to_text(f, name);
    for (const auto& [name, c] : w.constraints)
        out << "constraint " << name << " " << c.antecedent_name << " "
            << c.consequent_name << "\n";
    for (const auto& [name, s] : w.schemes) out << to_text(s, name);
    for (const auto& [name, l] : w.labels) out << to_text(l, name);
    for (const auto& [name, k] : w.classes) {
        out << "class " << name;
        for (const std::string& m : k.member_names) out << " " << m;
        out << "\n";
    }
    return out.str();
}

} // namespace relcon

#endif
