#ifndef RELCON_CLONES_HPP
#define RELCON_CLONES_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "relcon/config.hpp"
#include "relcon/core.hpp"
#include "relcon/minors.hpp"
#include "relcon/satisfaction.hpp"
#include "relcon/substitution.hpp"

namespace relcon {

/// An ordered set of distinct opaque labels. Labels stay symbolic (never
/// integers) so they are always disjoint from tuple indices.
class LabelSet {
  public:
    explicit LabelSet(std::vector<std::string> labels)
        : labels_(std::move(labels)) {
        if (labels_.empty())
            throw mismatch_error("label set must be non-empty");
        std::set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size())
            throw mismatch_error("label set has duplicate labels");
    }

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return static_cast<int>(i);
        throw mismatch_error("label '" + label + "' is not in the label set");
    }

    friend bool operator==(const LabelSet&, const LabelSet&) = default;

  private:
    std::vector<std::string> labels_;
};

/// f(g_1,...,g_n): the m-ary function a -> f(g_1(a),...,g_n(a)).
inline FiniteFunction compose_functions(const FiniteFunction& f,
                                        const std::vector<FiniteFunction>& gs) {
    if (static_cast<int>(gs.size()) != f.arity())
        throw mismatch_error("compose_functions: need exactly one inner function "
                             "per argument of the outer function");
    const int m = gs[0].arity();
    for (const FiniteFunction& g : gs) {
        if (g.arity() != m)
            throw mismatch_error("compose_functions: inner functions must share "
                                 "arity");
        require_same_domain(g.input_domain(), gs[0].input_domain(),
                            "compose_functions");
        require_same_domain(g.output_domain(), f.input_domain(),
                            "compose_functions");
    }
    const FiniteDomain& a = gs[0].input_domain();
    const int mid = f.input_domain().size();
    std::vector<int> table;
    const std::uint64_t points = gs[0].table_size();
    table.reserve(points);
    for (std::uint64_t p = 0; p < points; ++p) {
        std::uint64_t idx = 0;
        for (const FiniteFunction& g : gs)
            idx = idx * static_cast<std::uint64_t>(mid) +
                  static_cast<std::uint64_t>(g.at_index(p));
        table.push_back(f.at_index(idx));
    }
    return FiniteFunction(m, a, f.output_domain(), std::move(table));
}

/// Least class containing F and all projections up to the bound, closed
/// under composition with all intermediate arities kept within the bound.
/// This under-approximates the clone restricted to the bound: compositions
/// that would pass through a higher arity are not explored.
inline FunctionClass clone_generate(const FunctionClass& f, int arity_bound,
                                    const ExecConfig& cfg = {}) {
    if (!(f.input_domain() == f.output_domain()))
        throw mismatch_error("clone_generate: members must be operations");
    if (arity_bound < 1)
        throw mismatch_error("clone_generate: arity bound must be positive");
    const FiniteDomain& a = f.input_domain();
    for (int n = 1; n <= arity_bound; ++n) {
        const std::uint64_t positions = detail::pow_u64(
            static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(n));
        cfg.check_table_bits(detail::table_bits(positions, a.size()),
                             "clone_generate");
    }
    std::set<FiniteFunction> closed(f.members().begin(), f.members().end());
    for (int n = 1; n <= arity_bound; ++n)
        for (int i = 0; i < n; ++i) closed.insert(projection(a, n, i));

    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<FiniteFunction> snapshot(closed.begin(), closed.end());
        std::map<int, std::vector<const FiniteFunction*>> by_arity;
        for (const FiniteFunction& g : snapshot) by_arity[g.arity()].push_back(&g);
        for (const FiniteFunction& outer : snapshot) {
            const int n = outer.arity();
            for (int m = 1; m <= arity_bound; ++m) {
                const auto it = by_arity.find(m);
                if (it == by_arity.end()) continue;
                const auto& pool = it->second;
                std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
                for (;;) {
                    std::vector<FiniteFunction> gs;
                    gs.reserve(pick.size());
                    for (std::size_t j : pick) gs.push_back(*pool[j]);
                    FiniteFunction composed = compose_functions(outer, gs);
                    if (closed.insert(std::move(composed)).second) grew = true;
                    std::size_t i = pick.size();
                    while (i > 0 && pick[i - 1] + 1 == pool.size()) pick[--i] = 0;
                    if (i == 0) break;
                    ++pick[i - 1];
                }
            }
        }
    }
    return FunctionClass(a, a,
                         std::vector<FiniteFunction>(closed.begin(), closed.end()),
                         std::max(arity_bound, f.arity_bound()));
}

/// Union over f in K of the images fR; the proof device that turns an
/// A-to-A constraint (R,S) into the single preserved relation sitting
/// between them. If every member of K satisfies (R,S), this union is
/// contained in S.
inline Relation image_union(const FunctionClass& k, const Relation& r,
                            const ExecConfig& cfg = {}) {
    require_same_domain(r.domain(), k.input_domain(), "image_union");
    Relation acc = empty_relation(k.output_domain(), r.arity());
    for (const FiniteFunction& f : k.members()) {
        cfg.check_candidates(detail::pow_d(static_cast<int>(r.size()),
                                           static_cast<std::uint64_t>(f.arity())),
                             "image_union (matrices)");
        acc = acc | image_of_relation(f, r);
    }
    return acc;
}

/// Pol: all operations of arity up to the bound preserving every relation
/// in rels, by exhaustive table scan. An empty family yields every
/// operation up to the bound.
inline FunctionClass pol(const std::vector<Relation>& rels,
                         const FiniteDomain& domain, int arity_bound,
                         const ExecConfig& cfg = {}) {
    for (const Relation& r : rels)
        require_same_domain(r.domain(), domain, "pol");
    std::vector<Constraint> diagonal;
    diagonal.reserve(rels.size());
    for (const Relation& r : rels) diagonal.push_back(Constraint(r, r));
    std::vector<FiniteFunction> found;
    for (int n = 1; n <= arity_bound; ++n) {
        const std::uint64_t positions = detail::pow_u64(
            static_cast<std::uint64_t>(domain.size()), static_cast<std::uint64_t>(n));
        cfg.check_table_bits(detail::table_bits(positions, domain.size()), "pol");
        cfg.check_candidates(detail::pow_d(domain.size(), positions), "pol");
        const std::uint64_t tables = detail::pow_u64(
            static_cast<std::uint64_t>(domain.size()), positions);
        const auto compiled = detail::compile_all(diagonal, n, cfg);
        std::vector<std::uint8_t> hit(tables, 0);
        detail::for_each_chunk(
            tables, cfg.jobs, [&](std::uint64_t first, std::uint64_t last, unsigned) {
                std::vector<int> table(positions);
                for (std::uint64_t idx = first; idx < last; ++idx) {
                    detail::decode_table(idx, domain.size(), table);
                    bool ok = true;
                    for (const auto& cc : compiled)
                        if (!cc.satisfied_by(table)) {
                            ok = false;
                            break;
                        }
                    if (ok) hit[idx] = 1;
                }
            });
        std::vector<int> table(positions);
        for (std::uint64_t idx = 0; idx < tables; ++idx)
            if (hit[idx]) {
                detail::decode_table(idx, domain.size(), table);
                found.push_back(FiniteFunction(n, domain, domain, table));
            }
    }
    return FunctionClass(domain, domain, std::move(found), arity_bound);
}

inline FunctionClass pol(const std::vector<Relation>& rels, int arity_bound,
                         const ExecConfig& cfg = {}) {
    if (rels.empty())
        throw mismatch_error("pol: cannot infer the domain from an empty "
                             "family; pass it explicitly");
    return pol(rels, rels[0].domain(), arity_bound, cfg);
}

/// Inv: all relations of arity up to the bound preserved by every member.
inline std::vector<Relation> inv(const FunctionClass& f, int relation_arity_bound,
                                 const ExecConfig& cfg = {}) {
    if (!(f.input_domain() == f.output_domain()))
        throw mismatch_error("inv: members must be operations");
    const FiniteDomain& a = f.input_domain();
    std::vector<Relation> found;
    for (int m = 1; m <= relation_arity_bound; ++m) {
        const std::uint64_t points = detail::pow_u64(
            static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(m));
        cfg.check_candidates(detail::pow_d(2, points), "inv");
        const std::vector<Tuple> tuples = all_tuples(a, m);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << points); ++mask) {
            std::vector<Tuple> rts;
            for (std::uint64_t i = 0; i < points; ++i)
                if ((mask >> i) & 1) rts.push_back(tuples[i]);
            Relation r(m, a, std::move(rts));
            if (image_union(f, r, cfg).subset_of(r)) found.push_back(std::move(r));
        }
    }
    return found;
}

/// General superposition: { f o b : f in A^L, f o b_j in R_j for all j },
/// enumerating all |A|^|L| maps f from the label set into the domain.
inline Relation general_superposition(const std::vector<Relation>& rels,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::vector<std::string>>& bs,
                                      const LabelSet& labels,
                                      const ExecConfig& cfg = {}) {
    if (rels.empty())
        throw mismatch_error("general_superposition: empty relation family");
    if (bs.size() != rels.size())
        throw mismatch_error("general_superposition: need one label tuple per "
                             "relation");
    if (b.empty())
        throw mismatch_error("general_superposition: target label tuple must be "
                             "non-empty");
    const FiniteDomain& a = rels[0].domain();
    for (const Relation& r : rels)
        require_same_domain(r.domain(), a, "general_superposition");

    std::vector<int> b_idx;
    for (const std::string& label : b) b_idx.push_back(labels.index_of(label));
    std::vector<std::vector<int>> bs_idx;
    for (std::size_t j = 0; j < bs.size(); ++j) {
        if (bs[j].size() != static_cast<std::size_t>(rels[j].arity()))
            throw mismatch_error("general_superposition: label tuple " +
                                 std::to_string(j) + " has length " +
                                 std::to_string(bs[j].size()) +
                                 " but relation arity is " +
                                 std::to_string(rels[j].arity()));
        std::vector<int> row;
        for (const std::string& label : bs[j]) row.push_back(labels.index_of(label));
        bs_idx.push_back(std::move(row));
    }
    cfg.check_candidates(detail::pow_d(a.size(), labels.size()),
                         "general_superposition");
    std::vector<std::vector<std::uint8_t>> masks;
    masks.reserve(rels.size());
    for (const Relation& r : rels) masks.push_back(r.membership_mask());

    const std::uint64_t total = detail::pow_u64(
        static_cast<std::uint64_t>(a.size()),
        static_cast<std::uint64_t>(labels.size()));
    std::vector<std::uint8_t> keep(total, 0);
    detail::for_each_chunk(
        total, cfg.jobs, [&](std::uint64_t first, std::uint64_t last, unsigned) {
            std::vector<int> f(labels.size());
            for (std::uint64_t idx = first; idx < last; ++idx) {
                std::uint64_t rest = idx;
                for (std::size_t p = f.size(); p-- > 0;) {
                    f[p] = static_cast<int>(rest % static_cast<std::uint64_t>(a.size()));
                    rest /= static_cast<std::uint64_t>(a.size());
                }
                bool admissible = true;
                for (std::size_t j = 0; j < bs_idx.size(); ++j) {
                    std::uint64_t enc = 0;
                    for (int li : bs_idx[j])
                        enc = enc * static_cast<std::uint64_t>(a.size()) +
                              static_cast<std::uint64_t>(f[static_cast<std::size_t>(li)]);
                    if (!masks[j][enc]) {
                        admissible = false;
                        break;
                    }
                }
                if (admissible) keep[idx] = 1;
            }
        });

    std::vector<Tuple> out;
    std::vector<int> f(labels.size());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (!keep[idx]) continue;
        std::uint64_t rest = idx;
        for (std::size_t p = f.size(); p-- > 0;) {
            f[p] = static_cast<int>(rest % static_cast<std::uint64_t>(a.size()));
            rest /= static_cast<std::uint64_t>(a.size());
        }
        std::vector<int> entries;
        entries.reserve(b_idx.size());
        for (int li : b_idx) entries.push_back(f[static_cast<std::size_t>(li)]);
        out.push_back(Tuple(std::move(entries), a));
    }
    return Relation(static_cast<int>(b.size()), a, std::move(out));
}

/// R_b^=: the m-tuples constant on every block of positions sharing a label.
inline Relation equality_pattern_relation(const std::vector<std::string>& b,
                                          const FiniteDomain& a) {
    if (b.empty())
        throw mismatch_error("equality_pattern_relation: empty label tuple");
    std::vector<Tuple> out;
    for (const Tuple& t : all_tuples(a, static_cast<int>(b.size()))) {
        bool ok = true;
        for (std::size_t i = 0; i < b.size() && ok; ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                if (b[i] == b[j] && t(static_cast<int>(i)) != t(static_cast<int>(j))) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back(t);
    }
    return Relation(static_cast<int>(b.size()), a, std::move(out));
}

/// The decomposition of a general superposition into scheme language:
/// a minor formation scheme over the labels off the range of b, the tight
/// minor via that scheme, the equality-pattern relation of b, and whether
/// superposition = tight minor intersect pattern held on this instance.
struct SuperpositionDecomposition {
    MinorScheme scheme;
    Relation tight;
    Relation equality_pattern;
    Relation superposition;
    bool matches = false;
};

/// Builds the scheme whose map h_j reads position i of b_j as the least
/// target position with the same label, or as the indeterminate named by
/// the label when it lies outside the range of b. When several target
/// positions carry one label, any choice agrees after intersecting with
/// the equality pattern; the least index makes the output deterministic.
inline SuperpositionDecomposition superposition_decomposition(
    const std::vector<std::string>& b,
    const std::vector<std::vector<std::string>>& bs, const LabelSet& labels,
    const std::vector<Relation>& rels, const ExecConfig& cfg = {}) {
    if (rels.empty())
        throw mismatch_error("superposition_decomposition: empty family");
    const FiniteDomain& a = rels[0].domain();

    std::map<std::string, int> least_position;
    for (std::size_t p = 0; p < b.size(); ++p)
        least_position.emplace(b[p], static_cast<int>(p));
    std::vector<std::string> indeterminates;
    for (const std::string& label : labels.labels())
        if (!least_position.count(label)) indeterminates.push_back(label);

    std::vector<std::vector<SchemeEntry>> maps;
    for (std::size_t j = 0; j < bs.size(); ++j) {
        std::vector<SchemeEntry> h;
        for (const std::string& label : bs[j]) {
            labels.index_of(label); // validates membership
            auto it = least_position.find(label);
            if (it != least_position.end())
                h.push_back(SchemeEntry::target(it->second));
            else
                h.push_back(SchemeEntry::indeterminate(label));
        }
        maps.push_back(std::move(h));
    }
    MinorScheme scheme(static_cast<int>(b.size()), indeterminates, maps);
    Relation tight = tight_minor_relations(scheme, rels, cfg);
    Relation pattern = equality_pattern_relation(b, a);
    Relation super = general_superposition(rels, b, bs, labels, cfg);
    bool matches = (super == (tight & pattern));
    return {std::move(scheme), std::move(tight), std::move(pattern),
            std::move(super), matches};
}

/// The interpolation condition from the closed-relation-set construction:
/// for every finite F inside R some member of rels sits between F and S.
/// Finite domains collapse it to a single interpolant above R itself; both
/// readings are computed and must agree.
inline bool has_interpolant(const std::vector<Relation>& rels, const Relation& r,
                            const Relation& s) {
    if (r.arity() != s.arity())
        throw mismatch_error("has_interpolant: arities differ");
    bool simplified = false;
    for (const Relation& candidate : rels)
        if (candidate.arity() == r.arity() && r.subset_of(candidate) &&
            candidate.subset_of(s)) {
            simplified = true;
            break;
        }
    // literal subset quantification, kept as a cross-check
    bool literal = true;
    const std::vector<Tuple>& ts = r.tuples();
    if (ts.size() > 20)
        return simplified; // literal route only at tiny sizes
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ts.size()); ++mask) {
        bool found = false;
        for (const Relation& candidate : rels) {
            if (candidate.arity() != r.arity()) continue;
            if (!candidate.subset_of(s)) continue;
            bool covers = true;
            for (std::size_t i = 0; i < ts.size(); ++i)
                if ((mask >> i) & 1)
                    if (!candidate.contains(ts[i])) {
                        covers = false;
                        break;
                    }
            if (covers) {
                found = true;
                break;
            }
        }
        if (!found) {
            literal = false;
            break;
        }
    }
    if (literal != simplified)
        throw error("has_interpolant: literal and simplified readings disagree; "
                    "this indicates a bug");
    return simplified;
}

} // namespace relcon

#endif
