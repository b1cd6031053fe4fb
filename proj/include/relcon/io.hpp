#ifndef RELCON_IO_HPP
#define RELCON_IO_HPP

#include <sstream>
#include <string>

#include <json.hpp>

#include "relcon/clones.hpp"
#include "relcon/core.hpp"
#include "relcon/galois.hpp"
#include "relcon/minors.hpp"
#include "relcon/partials.hpp"
#include "relcon/satisfaction.hpp"
#include "relcon/substitution.hpp"

// Canonical serialization. Semantically equal objects always produce
// identical text and identical JSON: relation tuples and set members are
// already stored in canonical order, and nothing here depends on how a
// value was computed.

namespace relcon {

using json = nlohmann::json;

inline std::string to_text(const FiniteDomain& d) {
    return "domain " + d.name() + " " + std::to_string(d.size()) + "\n";
}

inline std::string to_text(const Tuple& t) {
    std::ostringstream out;
    for (int i = 0; i < t.arity(); ++i) {
        if (i) out << ' ';
        out << t(i);
    }
    return out.str();
}

inline std::string to_text(const Relation& r, const std::string& name = "result") {
    std::ostringstream out;
    out << "relation " << name << " " << r.arity() << " " << r.domain().name()
        << "\n";
    for (const Tuple& t : r.tuples()) out << to_text(t) << "\n";
    out << "\n";
    return out.str();
}

inline std::string to_text(const FiniteFunction& f,
                           const std::string& name = "result") {
    std::ostringstream out;
    out << "function " << name << " " << f.arity() << " "
        << f.input_domain().name() << " " << f.output_domain().name() << "\n";
    for (std::size_t i = 0; i < f.table().size(); ++i) {
        if (i) out << ' ';
        out << f.table()[i];
    }
    out << "\n\n";
    return out.str();
}

inline std::string to_text(const Constraint& c, const std::string& name = "result") {
    std::ostringstream out;
    out << to_text(c.antecedent(), name + ".R") << to_text(c.consequent(), name + ".S")
        << "constraint " << name << " " << name << ".R " << name << ".S\n";
    return out.str();
}

inline std::string to_text(const SchemeEntry& e) {
    return e.is_target() ? "t" + std::to_string(e.target_index()) : e.name();
}

inline std::string to_text(const MinorScheme& h, const std::string& name = "result") {
    std::ostringstream out;
    out << "scheme " << name << " target " << h.target() << " indet";
    for (const std::string& v : h.indeterminates()) out << " " << v;
    out << "\n";
    for (const auto& map : h.maps()) {
        out << "map";
        for (const SchemeEntry& e : map) out << " " << to_text(e);
        out << "\n";
    }
    out << "\n";
    return out.str();
}

inline std::string to_text(const LabelSet& l, const std::string& name = "result") {
    std::ostringstream out;
    out << "labels " << name;
    for (const std::string& s : l.labels()) out << " " << s;
    out << "\n";
    return out.str();
}

inline std::string to_text(const FunctionClass& k, const std::string& name = "result") {
    std::ostringstream out;
    std::size_t i = 0;
    for (const FiniteFunction& f : k.members())
        out << to_text(f, name + "." + std::to_string(i++));
    out << "class " << name;
    for (std::size_t j = 0; j < k.size(); ++j) out << " " << name << "." << j;
    out << "\n";
    return out.str();
}

inline std::string to_text(const ConstraintSet& t, const std::string& name = "result") {
    std::ostringstream out;
    std::size_t i = 0;
    for (const Constraint& c : t.members())
        out << to_text(c, name + "." + std::to_string(i++));
    return out.str();
}

inline std::string to_text(const PartialFunction& p,
                           const std::string& name = "result") {
    std::ostringstream out;
    out << "partial " << name << " " << p.arity() << " "
        << p.input_domain().name() << " " << p.output_domain().name() << "\n";
    for (const auto& [point, value] : p.graph())
        out << to_text(decode_point(point, p.arity(), p.input_domain())) << " -> "
            << value << "\n";
    out << "\n";
    return out.str();
}

inline json to_json(const FiniteDomain& d) {
    return json{{"kind", "domain"}, {"name", d.name()}, {"size", d.size()}};
}

inline json to_json(const Tuple& t) { return json(t.entries()); }

inline json to_json(const Relation& r) {
    json tuples = json::array();
    for (const Tuple& t : r.tuples()) tuples.push_back(to_json(t));
    return json{{"kind", "relation"},
                {"arity", r.arity()},
                {"domain", r.domain().name()},
                {"tuples", tuples}};
}

inline json to_json(const FiniteFunction& f) {
    return json{{"kind", "function"},
                {"arity", f.arity()},
                {"domain", f.input_domain().name()},
                {"codomain", f.output_domain().name()},
                {"table", f.table()}};
}

inline json to_json(const Constraint& c) {
    return json{{"kind", "constraint"},
                {"arity", c.arity()},
                {"antecedent", to_json(c.antecedent())},
                {"consequent", to_json(c.consequent())}};
}

inline json to_json(const MinorScheme& h) {
    json maps = json::array();
    for (const auto& map : h.maps()) {
        json entries = json::array();
        for (const SchemeEntry& e : map) entries.push_back(to_text(e));
        maps.push_back(entries);
    }
    return json{{"kind", "scheme"},
                {"target", h.target()},
                {"indeterminates", h.indeterminates()},
                {"maps", maps}};
}

inline json to_json(const LabelSet& l) {
    return json{{"kind", "labels"}, {"labels", l.labels()}};
}

inline json to_json(const FunctionClass& k) {
    json members = json::array();
    for (const FiniteFunction& f : k.members()) members.push_back(to_json(f));
    return json{{"kind", "class"},
                {"domain", k.input_domain().name()},
                {"codomain", k.output_domain().name()},
                {"arity_bound", k.arity_bound()},
                {"members", members}};
}

inline json to_json(const ConstraintSet& t) {
    json members = json::array();
    for (const Constraint& c : t.members()) members.push_back(to_json(c));
    return json{{"kind", "constraint-set"},
                {"domain", t.domain_a().name()},
                {"codomain", t.domain_b().name()},
                {"arity_bound", t.arity_bound()},
                {"members", members}};
}

inline json to_json(const PartialFunction& p) {
    json graph = json::array();
    for (const auto& [point, value] : p.graph())
        graph.push_back(json{{"point", to_json(decode_point(point, p.arity(),
                                                            p.input_domain()))},
                             {"value", value}});
    return json{{"kind", "partial-function"},
                {"arity", p.arity()},
                {"domain", p.input_domain().name()},
                {"codomain", p.output_domain().name()},
                {"graph", graph}};
}

inline const char* to_text(SeparationStatus s) {
    switch (s) {
        case SeparationStatus::found: return "found";
        case SeparationStatus::member: return "member";
        case SeparationStatus::empty_antecedent: return "empty-antecedent";
        case SeparationStatus::exhausted: return "exhausted";
    }
    return "?";
}

inline std::string to_text(const GaloisRoundtripReport& report) {
    std::ostringstream out;
    out << "roundtrip arity_bound " << report.arity_bound << " class_size "
        << report.class_size << "\n";
    if (!report.note.empty()) out << "note: " << report.note << "\n";
    for (const RoundtripEntry& e : report.entries) {
        out << "separate arity " << e.function.arity() << " table";
        for (int v : e.function.table()) out << " " << v;
        out << " -> " << to_text(e.status);
        if (e.witness)
            out << " witness_arity " << e.witness->arity() << " |R| "
                << e.witness->antecedent().size() << " |S| "
                << e.witness->consequent().size()
                << (e.class_side_verified && e.violation_verified ? " verified"
                                                                  : " UNVERIFIED");
        out << "\n";
    }
    out << (report.all_separated() ? "all separated\n" : "separation incomplete\n");
    return out.str();
}

inline json to_json(const GaloisRoundtripReport& report) {
    json entries = json::array();
    for (const RoundtripEntry& e : report.entries) {
        json entry{{"function", to_json(e.function)},
                   {"status", to_text(e.status)},
                   {"class_side_verified", e.class_side_verified},
                   {"violation_verified", e.violation_verified}};
        if (e.witness) entry["witness"] = to_json(*e.witness);
        entries.push_back(entry);
    }
    return json{{"kind", "roundtrip-report"},
                {"arity_bound", report.arity_bound},
                {"class_size", report.class_size},
                {"note", report.note},
                {"all_separated", report.all_separated()},
                {"entries", entries}};
}

inline std::string to_text(const Prop1Report& report) {
    std::ostringstream out;
    out << "prop1 family_size " << report.family_size << " arity_bound "
        << report.arity_bound << "\n";
    for (const auto& [arity, count] : report.table_sizes)
        out << "satisfied arity " << arity << ": " << count << "\n";
    out << "equality " << (report.has_equality ? "present" : "MISSING") << "\n";
    out << "empty " << (report.has_empty ? "present" : "MISSING") << "\n";
    out << "trials " << report.trials << "\n";
    for (const std::string& v : report.violations) out << "violation: " << v << "\n";
    out << (report.ok() ? "ok\n" : "FAILED\n");
    return out.str();
}

inline json to_json(const Prop1Report& report) {
    json sizes = json::object();
    for (const auto& [arity, count] : report.table_sizes)
        sizes[std::to_string(arity)] = count;
    return json{{"kind", "prop1-report"},
                {"family_size", report.family_size},
                {"arity_bound", report.arity_bound},
                {"table_sizes", sizes},
                {"has_equality", report.has_equality},
                {"has_empty", report.has_empty},
                {"trials", report.trials},
                {"violations", report.violations},
                {"ok", report.ok()}};
}

inline std::string to_text(const SuperpositionDecomposition& d) {
    std::ostringstream out;
    out << to_text(d.scheme, "scheme") << to_text(d.tight, "tight")
        << to_text(d.equality_pattern, "pattern")
        << to_text(d.superposition, "superposition") << "matches "
        << (d.matches ? "true" : "false") << "\n";
    return out.str();
}

inline json to_json(const SuperpositionDecomposition& d) {
    return json{{"kind", "superposition-decomposition"},
                {"scheme", to_json(d.scheme)},
                {"tight", to_json(d.tight)},
                {"equality_pattern", to_json(d.equality_pattern)},
                {"superposition", to_json(d.superposition)},
                {"matches", d.matches}};
}

inline std::string to_text(const MinorClassification& c) {
    std::ostringstream out;
    out << "classification " << MinorClassification::kind_name(c.kind)
        << " restrictive " << (c.restrictive ? "true" : "false") << " extensive "
        << (c.extensive ? "true" : "false") << "\n"
        << to_text(c.tight, "tight");
    return out.str();
}

inline json to_json(const MinorClassification& c) {
    return json{{"kind", "minor-classification"},
                {"label", MinorClassification::kind_name(c.kind)},
                {"restrictive", c.restrictive},
                {"extensive", c.extensive},
                {"tight", to_json(c.tight)}};
}

} // namespace relcon

#endif
