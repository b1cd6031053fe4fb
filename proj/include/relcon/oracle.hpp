#ifndef RELCON_ORACLE_HPP
#define RELCON_ORACLE_HPP

#include <map>
#include <string>
#include <vector>

#include "relcon/clones.hpp"
#include "relcon/core.hpp"
#include "relcon/minors.hpp"
#include "relcon/satisfaction.hpp"

// Maximally naive reference implementations: object-level evaluation, no
// precompiled masks, no pruning of unused indeterminates, no short-circuits.
// They must agree byte-for-byte with the optimized paths on every input and
// exist solely to be disagreed with.

namespace relcon::oracle {

namespace detail {

template <typename Fn>
void for_each_choice(std::size_t slots, std::size_t options, Fn&& fn) {
    if (options == 0) return;
    std::vector<std::size_t> choice(slots, 0);
    for (;;) {
        fn(static_cast<const std::vector<std::size_t>&>(choice));
        std::size_t i = slots;
        while (i > 0 && choice[i - 1] + 1 == options) choice[--i] = 0;
        if (i == 0) break;
        ++choice[i - 1];
    }
}

} // namespace detail

inline Relation image(const FiniteFunction& f, const Relation& r) {
    require_same_domain(r.domain(), f.input_domain(), "oracle::image");
    std::vector<Tuple> out;
    detail::for_each_choice(
        static_cast<std::size_t>(f.arity()), r.size(),
        [&](const std::vector<std::size_t>& choice) {
            std::vector<Tuple> cols;
            for (std::size_t j : choice) cols.push_back(r.tuples()[j]);
            out.push_back(apply_to_matrix(f, Matrix(std::move(cols))));
        });
    return Relation(r.arity(), f.output_domain(), std::move(out));
}

inline Relation tight_minor(const MinorScheme& h, const std::vector<Relation>& rels) {
    if (rels.size() != h.family_size())
        throw mismatch_error("oracle::tight_minor: family size mismatch");
    for (std::size_t j = 0; j < rels.size(); ++j)
        if (rels[j].arity() != h.source_arity(j))
            throw mismatch_error("oracle::tight_minor: arity mismatch at " +
                                 std::to_string(j));
    const FiniteDomain& domain = rels[0].domain();
    const auto& indets = h.indeterminates(); // all of them, used or not
    std::vector<Tuple> out;
    for (const Tuple& a : all_tuples(domain, h.target())) {
        bool admitted = false;
        detail::for_each_choice(
            indets.size(), static_cast<std::size_t>(domain.size()),
            [&](const std::vector<std::size_t>& choice) {
                std::map<std::string, int> assignment;
                for (std::size_t v = 0; v < indets.size(); ++v)
                    assignment[indets[v]] = static_cast<int>(choice[v]);
                SkolemMap sigma(std::move(assignment));
                bool all_in = true;
                for (std::size_t j = 0; j < rels.size(); ++j)
                    if (!rels[j].contains(scheme_apply(a, sigma, h.maps()[j])))
                        all_in = false;
                if (all_in) admitted = true;
            });
        if (admitted) out.push_back(a);
    }
    return Relation(h.target(), domain, std::move(out));
}

inline Constraint tight_minor_constraint(const MinorScheme& h,
                                         const std::vector<Constraint>& cs) {
    std::vector<Relation> ants, cons;
    for (const Constraint& c : cs) {
        ants.push_back(c.antecedent());
        cons.push_back(c.consequent());
    }
    return Constraint(tight_minor(h, ants), tight_minor(h, cons));
}

inline Relation superposition(const std::vector<Relation>& rels,
                              const std::vector<std::string>& b,
                              const std::vector<std::vector<std::string>>& bs,
                              const LabelSet& labels) {
    if (rels.empty() || bs.size() != rels.size())
        throw mismatch_error("oracle::superposition: family mismatch");
    const FiniteDomain& a = rels[0].domain();
    std::vector<Tuple> out;
    detail::for_each_choice(
        labels.size(), static_cast<std::size_t>(a.size()),
        [&](const std::vector<std::size_t>& choice) {
            std::map<std::string, int> f;
            for (std::size_t i = 0; i < labels.size(); ++i)
                f[labels.labels()[i]] = static_cast<int>(choice[i]);
            bool admissible = true;
            for (std::size_t j = 0; j < rels.size(); ++j) {
                std::vector<int> entries;
                for (const std::string& label : bs[j]) entries.push_back(f.at(label));
                if (!rels[j].contains(Tuple(std::move(entries), a)))
                    admissible = false;
            }
            if (admissible) {
                std::vector<int> entries;
                for (const std::string& label : b) entries.push_back(f.at(label));
                out.push_back(Tuple(std::move(entries), a));
            }
        });
    return Relation(static_cast<int>(b.size()), a, std::move(out));
}

} // namespace relcon::oracle

#endif
