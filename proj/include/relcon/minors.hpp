#ifndef RELCON_MINORS_HPP
#define RELCON_MINORS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relcon/config.hpp"
#include "relcon/core.hpp"

namespace relcon {

/// One position of a scheme map: either a target coordinate or an
/// existentially quantified indeterminate.
class SchemeEntry {
  public:
    static SchemeEntry target(int index) { return SchemeEntry(index, {}); }
    static SchemeEntry indeterminate(std::string name) {
        return SchemeEntry(-1, std::move(name));
    }

    bool is_target() const { return index_ >= 0; }
    int target_index() const { return index_; }
    const std::string& name() const { return name_; }

    friend bool operator==(const SchemeEntry&, const SchemeEntry&) = default;
    friend auto operator<=>(const SchemeEntry&, const SchemeEntry&) = default;

  private:
    SchemeEntry(int index, std::string name)
        : index_(index), name_(std::move(name)) {}

    int index_; // -1 when an indeterminate
    std::string name_;
};

/// An assignment of domain elements to indeterminates, witnessing the
/// existential quantifiers of a scheme.
class SkolemMap {
  public:
    SkolemMap() = default;
    explicit SkolemMap(std::map<std::string, int> assignment)
        : assignment_(std::move(assignment)) {}

    const std::map<std::string, int>& assignment() const { return assignment_; }

    int at(const std::string& v) const {
        auto it = assignment_.find(v);
        if (it == assignment_.end())
            throw mismatch_error("Skolem map has no assignment for indeterminate '" +
                                 v + "'");
        return it->second;
    }

    friend bool operator==(const SkolemMap&, const SkolemMap&) = default;

  private:
    std::map<std::string, int> assignment_;
};

/// A minor formation scheme: target arity m, a finite ordered set V of
/// indeterminate symbols, and a non-empty family of maps h_j from source
/// positions into m u V. Families are ordered sequences so that schemes
/// and relation families stay aligned by position.
class MinorScheme {
  public:
    MinorScheme(int target, std::vector<std::string> indeterminates,
                std::vector<std::vector<SchemeEntry>> maps)
        : target_(target),
          indeterminates_(std::move(indeterminates)),
          maps_(std::move(maps)) {
        if (target_ < 1)
            throw mismatch_error("scheme target arity must be positive");
        if (maps_.empty())
            throw mismatch_error("scheme needs a non-empty family of maps");
        std::set<std::string> known(indeterminates_.begin(), indeterminates_.end());
        if (known.size() != indeterminates_.size())
            throw mismatch_error("scheme indeterminates must be distinct");
        for (const auto& h : maps_) {
            if (h.empty())
                throw mismatch_error("scheme source arities must be positive");
            for (const SchemeEntry& e : h) {
                if (e.is_target()) {
                    if (e.target_index() >= target_)
                        throw mismatch_error("scheme entry t" +
                                             std::to_string(e.target_index()) +
                                             " exceeds target arity " +
                                             std::to_string(target_));
                } else if (!known.count(e.name())) {
                    throw mismatch_error("scheme entry uses unknown indeterminate '" +
                                         e.name() + "'");
                }
            }
        }
    }

    int target() const { return target_; }
    const std::vector<std::string>& indeterminates() const { return indeterminates_; }
    const std::vector<std::vector<SchemeEntry>>& maps() const { return maps_; }
    std::size_t family_size() const { return maps_.size(); }
    int source_arity(std::size_t j) const {
        return static_cast<int>(maps_[j].size());
    }

    /// Indeterminates that actually occur in some map, in V order. Unused
    /// ones are existentially trivial over a non-empty domain, so Skolem
    /// search is restricted to these.
    std::vector<std::string> used_indeterminates() const {
        std::set<std::string> used;
        for (const auto& h : maps_)
            for (const SchemeEntry& e : h)
                if (!e.is_target()) used.insert(e.name());
        std::vector<std::string> out;
        for (const std::string& v : indeterminates_)
            if (used.count(v)) out.push_back(v);
        return out;
    }

    /// Singleton scheme whose unique map is the identity on n positions.
    static MinorScheme identity(int n) {
        std::vector<SchemeEntry> h;
        for (int i = 0; i < n; ++i) h.push_back(SchemeEntry::target(i));
        return MinorScheme(n, {}, {std::move(h)});
    }

    friend bool operator==(const MinorScheme&, const MinorScheme&) = default;

  private:
    int target_;
    std::vector<std::string> indeterminates_;
    std::vector<std::vector<SchemeEntry>> maps_;
};

/// (a + sigma)h: the source tuple whose i-th entry reads through the target
/// tuple a or the Skolem assignment, according to h(i).
inline Tuple scheme_apply(const Tuple& a, const SkolemMap& sigma,
                          const std::vector<SchemeEntry>& h) {
    std::vector<int> out;
    out.reserve(h.size());
    for (const SchemeEntry& e : h) {
        if (e.is_target()) {
            if (e.target_index() >= a.arity())
                throw mismatch_error("scheme_apply: target index out of range");
            out.push_back(a(e.target_index()));
        } else {
            out.push_back(sigma.at(e.name()));
        }
    }
    return Tuple(std::move(out), a.domain());
}

namespace detail {

/// Precompiled scheme evaluation against a relation family, used by the
/// tight-minor search. Entries are resolved to either a target position or
/// an index into the used-indeterminate vector.
struct CompiledScheme {
    struct Entry {
        bool from_target;
        int index; // target position, or slot in the sigma vector
    };
    int target = 0;
    int domain_size = 0;
    std::vector<std::vector<Entry>> maps;
    std::vector<std::vector<std::uint8_t>> membership; // per family member
    std::size_t sigma_slots = 0;

    bool admits(const std::vector<int>& a, std::vector<int>& sigma) const {
        // iterate assignments in lexicographic order; sigma is scratch space
        std::fill(sigma.begin(), sigma.end(), 0);
        for (;;) {
            bool all_in = true;
            for (std::size_t j = 0; j < maps.size(); ++j) {
                std::uint64_t idx = 0;
                for (const Entry& e : maps[j]) {
                    int value = e.from_target ? a[static_cast<std::size_t>(e.index)]
                                              : sigma[static_cast<std::size_t>(e.index)];
                    idx = idx * static_cast<std::uint64_t>(domain_size) +
                          static_cast<std::uint64_t>(value);
                }
                if (!membership[j][idx]) {
                    all_in = false;
                    break;
                }
            }
            if (all_in) return true;
            std::size_t s = sigma_slots;
            while (s > 0 && sigma[s - 1] + 1 == domain_size) sigma[--s] = 0;
            if (s == 0) return false;
            ++sigma[s - 1];
        }
    }
};

inline CompiledScheme compile_scheme(const MinorScheme& h,
                                     const std::vector<Relation>& rels) {
    if (rels.size() != h.family_size())
        throw mismatch_error("scheme family has " +
                             std::to_string(h.family_size()) +
                             " maps but " + std::to_string(rels.size()) +
                             " relations were given");
    for (std::size_t j = 0; j < rels.size(); ++j) {
        if (rels[j].arity() != h.source_arity(j))
            throw mismatch_error("relation " + std::to_string(j) + " has arity " +
                                 std::to_string(rels[j].arity()) +
                                 " but scheme map expects " +
                                 std::to_string(h.source_arity(j)));
        require_same_domain(rels[j].domain(), rels[0].domain(),
                            "tight_minor_relations");
    }
    const std::vector<std::string> used = h.used_indeterminates();
    std::map<std::string, int> slot;
    for (std::size_t s = 0; s < used.size(); ++s)
        slot[used[s]] = static_cast<int>(s);

    CompiledScheme out;
    out.target = h.target();
    out.domain_size = rels[0].domain().size();
    out.sigma_slots = used.size();
    for (std::size_t j = 0; j < h.family_size(); ++j) {
        std::vector<CompiledScheme::Entry> entries;
        for (const SchemeEntry& e : h.maps()[j]) {
            if (e.is_target())
                entries.push_back({true, e.target_index()});
            else
                entries.push_back({false, slot.at(e.name())});
        }
        out.maps.push_back(std::move(entries));
        out.membership.push_back(rels[j].membership_mask());
    }
    return out;
}

} // namespace detail

/// The unique tight conjunctive minor of the family via H: exactly those
/// m-tuples a admitting a Skolem map sigma with (a + sigma)h_j in R_j for
/// all j. Skolem search runs over the indeterminates that occur in some
/// h_j; over a non-empty domain the others are satisfiable by any value.
inline Relation tight_minor_relations(const MinorScheme& h,
                                      const std::vector<Relation>& rels,
                                      const ExecConfig& cfg = {}) {
    detail::CompiledScheme compiled = detail::compile_scheme(h, rels);
    const FiniteDomain& domain = rels[0].domain();
    cfg.check_candidates(detail::pow_d(domain.size(),
                                       static_cast<std::uint64_t>(h.target())),
                         "tight_minor_relations");
    cfg.check_candidates(detail::pow_d(domain.size(), compiled.sigma_slots),
                         "tight_minor_relations (Skolem maps)");
    const std::uint64_t candidates = detail::pow_u64(
        static_cast<std::uint64_t>(domain.size()),
        static_cast<std::uint64_t>(h.target()));

    std::vector<std::uint8_t> admit(candidates, 0);
    detail::for_each_chunk(
        candidates, cfg.jobs,
        [&](std::uint64_t first, std::uint64_t last, unsigned) {
            std::vector<int> a(static_cast<std::size_t>(h.target()));
            std::vector<int> sigma(compiled.sigma_slots);
            for (std::uint64_t idx = first; idx < last; ++idx) {
                std::uint64_t rest = idx;
                for (std::size_t i = a.size(); i-- > 0;) {
                    a[i] = static_cast<int>(rest % static_cast<std::uint64_t>(domain.size()));
                    rest /= static_cast<std::uint64_t>(domain.size());
                }
                if (compiled.admits(a, sigma)) admit[idx] = 1;
            }
        });

    std::vector<Tuple> tuples;
    for (std::uint64_t idx = 0; idx < candidates; ++idx)
        if (admit[idx]) tuples.push_back(decode_point(idx, h.target(), domain));
    return Relation(h.target(), domain, std::move(tuples));
}

/// Comparison of a relation against the tight minor of a family.
struct MinorClassification {
    enum class Kind { restrictive, extensive, tight, neither, both_trivially };

    bool restrictive = false; // R subset of the tight minor
    bool extensive = false;   // R superset of the tight minor
    Kind kind = Kind::neither;
    Relation tight;

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::restrictive: return "restrictive";
            case Kind::extensive: return "extensive";
            case Kind::tight: return "tight";
            case Kind::neither: return "neither";
            case Kind::both_trivially: return "both-trivially";
        }
        return "?";
    }
};

/// Classifies R relative to the tight minor T of the family via H.
/// R = T counts as "tight" except at the degenerate extremes (T empty or
/// full), where both inclusions hold for structural reasons and the label
/// "both-trivially" is reported instead.
inline MinorClassification minor_classification(const Relation& r,
                                                const MinorScheme& h,
                                                const std::vector<Relation>& rels,
                                                const ExecConfig& cfg = {}) {
    if (r.arity() != h.target())
        throw mismatch_error("minor_classification: relation arity " +
                             std::to_string(r.arity()) + " != scheme target " +
                             std::to_string(h.target()));
    Relation tight = tight_minor_relations(h, rels, cfg);
    require_same_domain(r.domain(), tight.domain(), "minor_classification");
    MinorClassification out{false, false, MinorClassification::Kind::neither,
                            tight};
    out.restrictive = r.subset_of(tight);
    out.extensive = tight.subset_of(r);
    using Kind = MinorClassification::Kind;
    if (out.restrictive && out.extensive)
        out.kind = (tight.empty() || tight.is_full()) ? Kind::both_trivially
                                                      : Kind::tight;
    else if (out.restrictive)
        out.kind = Kind::restrictive;
    else if (out.extensive)
        out.kind = Kind::extensive;
    return out;
}

/// The unique tight conjunctive minor of a constraint family: the tight
/// minor of the antecedents paired with the tight minor of the consequents,
/// both via the same scheme.
inline Constraint tight_minor_constraint(const MinorScheme& h,
                                         const std::vector<Constraint>& cs,
                                         const ExecConfig& cfg = {}) {
    std::vector<Relation> antecedents, consequents;
    antecedents.reserve(cs.size());
    consequents.reserve(cs.size());
    for (const Constraint& c : cs) {
        antecedents.push_back(c.antecedent());
        consequents.push_back(c.consequent());
    }
    return Constraint(tight_minor_relations(h, antecedents, cfg),
                      tight_minor_relations(h, consequents, cfg));
}

/// c is a conjunctive minor of the family via H iff its antecedent is a
/// restrictive minor of the antecedents and its consequent an extensive
/// minor of the consequents.
inline bool is_conjunctive_minor(const Constraint& c, const MinorScheme& h,
                                 const std::vector<Constraint>& cs,
                                 const ExecConfig& cfg = {}) {
    Constraint tight = tight_minor_constraint(h, cs, cfg);
    return c.antecedent().subset_of(tight.antecedent()) &&
           tight.consequent().subset_of(c.consequent());
}

/// The composite scheme H(H_j : j in J). Inner indeterminates are renamed
/// "<j>.<name>" so the disjointness precondition holds without the caller
/// managing freshness.
inline MinorScheme compose_schemes(const MinorScheme& h,
                                   const std::vector<MinorScheme>& inner) {
    if (inner.size() != h.family_size())
        throw mismatch_error("compose_schemes: need one inner scheme per map of "
                             "the outer scheme");
    std::vector<std::string> indets = h.indeterminates();
    std::set<std::string> seen(indets.begin(), indets.end());
    for (std::size_t j = 0; j < inner.size(); ++j) {
        if (inner[j].target() != h.source_arity(j))
            throw mismatch_error("compose_schemes: inner scheme " +
                                 std::to_string(j) + " has target " +
                                 std::to_string(inner[j].target()) +
                                 " but outer map has source arity " +
                                 std::to_string(h.source_arity(j)));
        for (const std::string& v : inner[j].indeterminates()) {
            std::string renamed = std::to_string(j) + "." + v;
            if (!seen.insert(renamed).second)
                throw mismatch_error("compose_schemes: indeterminate name clash '" +
                                     renamed + "'");
            indets.push_back(std::move(renamed));
        }
    }
    std::vector<std::vector<SchemeEntry>> maps;
    for (std::size_t j = 0; j < inner.size(); ++j) {
        const auto& outer_map = h.maps()[j];
        for (const auto& inner_map : inner[j].maps()) {
            std::vector<SchemeEntry> k;
            k.reserve(inner_map.size());
            for (const SchemeEntry& e : inner_map) {
                if (e.is_target())
                    k.push_back(outer_map[static_cast<std::size_t>(e.target_index())]);
                else
                    k.push_back(SchemeEntry::indeterminate(std::to_string(j) + "." +
                                                           e.name()));
            }
            maps.push_back(std::move(k));
        }
    }
    return MinorScheme(h.target(), std::move(indets), std::move(maps));
}

/// True when `candidate` shrinks the antecedent and/or grows the consequent
/// of `base`.
inline bool is_relaxation(const Constraint& candidate, const Constraint& base) {
    if (candidate.arity() != base.arity()) return false;
    return candidate.antecedent().subset_of(base.antecedent()) &&
           base.consequent().subset_of(candidate.consequent());
}

/// Builds the relaxation of c with the given sides, rejecting (rather than
/// clamping) inputs that violate the inclusion preconditions.
inline Constraint relax(const Constraint& c, const Relation& new_antecedent,
                        const Relation& new_consequent) {
    Constraint out(new_antecedent, new_consequent);
    if (out.arity() != c.arity())
        throw mismatch_error("relax: arity changed");
    if (!new_antecedent.subset_of(c.antecedent()))
        throw precondition_error("relax: new antecedent is not a subset");
    if (!c.consequent().subset_of(new_consequent))
        throw precondition_error("relax: new consequent is not a superset");
    return out;
}

/// (R, intersection of the S_j) for a family sharing the antecedent R.
inline Constraint intersect_consequents(const std::vector<Constraint>& cs) {
    if (cs.empty())
        throw mismatch_error("intersect_consequents: empty family");
    Relation meet = cs[0].consequent();
    for (std::size_t j = 1; j < cs.size(); ++j) {
        if (!(cs[j].antecedent() == cs[0].antecedent()))
            throw mismatch_error("intersect_consequents: antecedents differ");
        meet = meet & cs[j].consequent();
    }
    return Constraint(cs[0].antecedent(), std::move(meet));
}

/// (=_A, =_B), the binary equality constraint.
inline Constraint equality_constraint(const FiniteDomain& a, const FiniteDomain& b) {
    return Constraint(equality_relation(a), equality_relation(b));
}

/// The empty constraint of the given arity. One exists per arity; the arity
/// is needed to type-check minors and relaxations.
inline Constraint empty_constraint(const FiniteDomain& a, const FiniteDomain& b,
                                   int arity) {
    return Constraint(empty_relation(a, arity), empty_relation(b, arity));
}

/// (A^m, B^m), satisfied by every function.
inline Constraint trivial_constraint(const FiniteDomain& a, const FiniteDomain& b,
                                     int arity) {
    return Constraint(full_relation(a, arity), full_relation(b, arity));
}

/// Tight conjunctive minor of a singleton family: subsumes permutation,
/// identification, projection and addition of dummy arguments.
inline Constraint simple_minor(const Constraint& c0,
                               const std::vector<SchemeEntry>& h, int target,
                               const std::vector<std::string>& indeterminates,
                               const ExecConfig& cfg = {}) {
    MinorScheme scheme(target, indeterminates, {h});
    return tight_minor_constraint(scheme, {c0}, cfg);
}

} // namespace relcon

#endif
