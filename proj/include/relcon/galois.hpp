#ifndef RELCON_GALOIS_HPP
#define RELCON_GALOIS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relcon/clones.hpp"
#include "relcon/config.hpp"
#include "relcon/core.hpp"
#include "relcon/minors.hpp"
#include "relcon/satisfaction.hpp"
#include "relcon/substitution.hpp"

namespace relcon {

/// A canonically ordered set of A-to-B constraints of mixed arities, with
/// an explicit arity bound.
class ConstraintSet {
  public:
    ConstraintSet(FiniteDomain a, FiniteDomain b,
                  std::vector<Constraint> members = {}, int arity_bound = 0)
        : a_(std::move(a)), b_(std::move(b)), members_(std::move(members)),
          arity_bound_(arity_bound) {
        for (const Constraint& c : members_) {
            require_same_domain(c.antecedent().domain(), a_, "constraint set");
            require_same_domain(c.consequent().domain(), b_, "constraint set");
            arity_bound_ = std::max(arity_bound_, c.arity());
        }
        if (arity_bound_ < 1) arity_bound_ = 1;
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()),
                       members_.end());
    }

    const FiniteDomain& domain_a() const { return a_; }
    const FiniteDomain& domain_b() const { return b_; }
    const std::vector<Constraint>& members() const { return members_; }
    int arity_bound() const { return arity_bound_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    bool contains(const Constraint& c) const {
        return std::binary_search(members_.begin(), members_.end(), c);
    }

    friend bool operator==(const ConstraintSet& x, const ConstraintSet& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.members_ == y.members_;
    }

  private:
    FiniteDomain a_;
    FiniteDomain b_;
    std::vector<Constraint> members_;
    int arity_bound_;
};

/// All functions of arity up to the bound satisfying every member of T,
/// by exhaustive scan over the |B|^(|A|^n) value tables per arity.
inline FunctionClass functions_satisfying(const ConstraintSet& t, int arity_bound,
                                          const ExecConfig& cfg = {}) {
    if (arity_bound < 1)
        throw mismatch_error("functions_satisfying: arity bound must be positive");
    const FiniteDomain& a = t.domain_a();
    const FiniteDomain& b = t.domain_b();
    std::vector<FiniteFunction> found;
    for (int n = 1; n <= arity_bound; ++n) {
        const std::uint64_t positions = detail::pow_u64(
            static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(n));
        cfg.check_table_bits(detail::table_bits(positions, b.size()),
                             "functions_satisfying");
        cfg.check_candidates(detail::pow_d(b.size(), positions),
                             "functions_satisfying");
        const std::uint64_t tables = detail::pow_u64(
            static_cast<std::uint64_t>(b.size()), positions);
        const auto compiled = detail::compile_all(t.members(), n, cfg);

        std::vector<std::uint8_t> hit(tables, 0);
        detail::for_each_chunk(
            tables, cfg.jobs, [&](std::uint64_t first, std::uint64_t last, unsigned) {
                std::vector<int> table(positions);
                for (std::uint64_t idx = first; idx < last; ++idx) {
                    detail::decode_table(idx, b.size(), table);
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
                detail::decode_table(idx, b.size(), table);
                found.push_back(FiniteFunction(n, a, b, table));
            }
    }
    return FunctionClass(a, b, std::move(found), arity_bound);
}

/// All constraints of arity up to the bound satisfied by every member of K.
/// Candidate pairs are enumerated as subset masks; the budget guard bounds
/// 2^(|A|^m) * 2^(|B|^m) per arity.
inline ConstraintSet constraints_satisfied_by(const FunctionClass& k,
                                              int constraint_arity_bound,
                                              const ExecConfig& cfg = {}) {
    if (constraint_arity_bound < 1)
        throw mismatch_error("constraints_satisfied_by: arity bound must be positive");
    const FiniteDomain& a = k.input_domain();
    const FiniteDomain& b = k.output_domain();
    std::vector<Constraint> members;
    for (int m = 1; m <= constraint_arity_bound; ++m) {
        const std::uint64_t na = detail::pow_u64(
            static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(m));
        const std::uint64_t nb = detail::pow_u64(
            static_cast<std::uint64_t>(b.size()), static_cast<std::uint64_t>(m));
        cfg.check_candidates(detail::pow_d(2, na) * detail::pow_d(2, nb),
                             "constraints_satisfied_by");
        const std::vector<Tuple> a_tuples = all_tuples(a, m);
        const std::vector<Tuple> b_tuples = all_tuples(b, m);
        for (std::uint64_t rmask = 0; rmask < (std::uint64_t{1} << na); ++rmask) {
            std::vector<Tuple> rts;
            for (std::uint64_t i = 0; i < na; ++i)
                if ((rmask >> i) & 1) rts.push_back(a_tuples[i]);
            Relation r(m, a, std::move(rts));
            Relation image = image_union(k, r, cfg);
            std::uint64_t umask = 0;
            for (const Tuple& t : image.tuples())
                umask |= std::uint64_t{1} << encode_point(t, b);
            for (std::uint64_t smask = 0; smask < (std::uint64_t{1} << nb); ++smask) {
                if ((umask & ~smask) != 0) continue;
                std::vector<Tuple> sts;
                for (std::uint64_t i = 0; i < nb; ++i)
                    if ((smask >> i) & 1) sts.push_back(b_tuples[i]);
                members.push_back(Constraint(r, Relation(m, b, std::move(sts))));
            }
        }
    }
    return ConstraintSet(a, b, std::move(members), constraint_arity_bound);
}

/// Result of a separating-witness search, with the reason when no witness
/// exists or the bounded search space ran out.
enum class SeparationStatus {
    found,
    member,            // the queried object already belongs to the class/set
    empty_antecedent,  // (empty, S) is satisfied by everything
    exhausted          // bounded search space exhausted without a witness
};

struct ConstraintSeparation {
    SeparationStatus status = SeparationStatus::exhausted;
    std::optional<Constraint> witness;
    bool found() const { return status == SeparationStatus::found; }
};

struct FunctionSeparation {
    SeparationStatus status = SeparationStatus::exhausted;
    std::optional<FiniteFunction> witness;
    bool found() const { return status == SeparationStatus::found; }
};

/// Builds a constraint satisfied by all of K and violated by g, using the
/// witness shape from the classical completeness proof: find a smallest
/// finite F in A^n on which g disagrees with every n-ary member of K
/// (breadth-first over subset size, lexicographic tie-break), take R to be
/// the columns of the |F| x n matrix of F's tuples and S the set of images
/// fM over the n-ary members. Substitution-closedness of K is a stated
/// precondition: it is what makes members of other arities satisfy (R,S).
/// Returns no witness exactly when g is a member of K at its arity.
inline ConstraintSeparation separating_constraint(const FunctionClass& k,
                                                  const FiniteFunction& g,
                                                  const ExecConfig& cfg = {}) {
    require_same_domain(g.input_domain(), k.input_domain(), "separating_constraint");
    require_same_domain(g.output_domain(), k.output_domain(),
                        "separating_constraint");
    if (g.arity() > k.arity_bound())
        throw precondition_error("separating_constraint: function arity exceeds "
                                 "the class arity bound");
    if (!is_substitution_closed(k))
        throw precondition_error("separating_constraint: class is not closed "
                                 "under simple variable substitutions");
    const FiniteDomain& a = g.input_domain();
    const FiniteDomain& b = g.output_domain();
    const int n = g.arity();
    const std::uint64_t positions = g.table_size();
    cfg.check_table_bits(detail::table_bits(positions, b.size()),
                         "separating_constraint");
    cfg.check_candidates(detail::pow_d(2, positions), "separating_constraint");
    if (positions > 63)
        throw budget_error("separating_constraint: |A|^n exceeds 63 points");

    const auto n_ary = k.members_of_arity(n);
    std::vector<std::uint64_t> disagree;
    disagree.reserve(n_ary.size());
    for (const FiniteFunction& f : n_ary) {
        std::uint64_t d = 0;
        for (std::uint64_t p = 0; p < positions; ++p)
            if (f.at_index(p) != g.at_index(p)) d |= std::uint64_t{1} << p;
        if (d == 0) return {SeparationStatus::member, std::nullopt};
        disagree.push_back(d);
    }

    // breadth-first over subset size; within a size, combinations of point
    // indices in lexicographic order
    std::vector<std::uint64_t> chosen;
    for (int size = 1; size <= static_cast<int>(positions) && chosen.empty();
         ++size) {
        std::vector<std::uint64_t> combo(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i)
            combo[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i);
        for (;;) {
            std::uint64_t fmask = 0;
            for (std::uint64_t p : combo) fmask |= std::uint64_t{1} << p;
            bool hits_all = true;
            for (std::uint64_t d : disagree)
                if ((d & fmask) == 0) {
                    hits_all = false;
                    break;
                }
            if (hits_all) {
                chosen = combo;
                break;
            }
            int i = size - 1;
            while (i >= 0 &&
                   combo[static_cast<std::size_t>(i)] ==
                       positions - static_cast<std::uint64_t>(size - i))
                --i;
            if (i < 0) break;
            ++combo[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                combo[static_cast<std::size_t>(j)] =
                    combo[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    if (chosen.empty())
        return {SeparationStatus::exhausted, std::nullopt}; // unreachable: g not in K

    // rows of M are the tuples of F; columns form the antecedent
    const int f_size = static_cast<int>(chosen.size());
    std::vector<Tuple> f_rows;
    for (std::uint64_t p : chosen) f_rows.push_back(decode_point(p, n, a));
    std::vector<Tuple> columns;
    for (int j = 0; j < n; ++j) {
        std::vector<int> col;
        for (const Tuple& row : f_rows) col.push_back(row(j));
        columns.push_back(Tuple(std::move(col), a));
    }
    Relation antecedent(f_size, a, columns);
    std::vector<Tuple> images;
    for (const FiniteFunction& f : n_ary) {
        std::vector<int> img;
        for (std::uint64_t p : chosen) img.push_back(f.at_index(p));
        images.push_back(Tuple(std::move(img), b));
    }
    Relation consequent(f_size, b, std::move(images));
    Constraint witness(antecedent, consequent);

    // the construction guarantees both conditions; check them anyway
    for (const FiniteFunction& f : k.members())
        if (!satisfies(f, witness))
            throw error("separating_constraint: internal witness check failed "
                        "(class member violates the constraint)");
    if (satisfies(g, witness))
        throw error("separating_constraint: internal witness check failed "
                    "(function satisfies its own separating constraint)");
    return {SeparationStatus::found, std::move(witness)};
}

/// Searches for a function that satisfies every member of T but violates c.
/// The search space is organized by the matrix construction of the
/// completeness proof for constraint sets: n = |antecedent|, M is the
/// matrix whose columns are the antecedent tuples, padded with rows so that
/// every n-tuple of A^n occurs as a row. An n-ary g is then determined by
/// its table; g "violates via M" when the first m components of gM land
/// outside the consequent. Returns the lexicographically least table that
/// works, scanning candidates in table order.
inline FunctionSeparation separating_function(const ConstraintSet& t,
                                              const Constraint& c,
                                              const ExecConfig& cfg = {}) {
    require_same_domain(c.antecedent().domain(), t.domain_a(),
                        "separating_function");
    require_same_domain(c.consequent().domain(), t.domain_b(),
                        "separating_function");
    if (t.contains(c)) return {SeparationStatus::member, std::nullopt};
    if (c.antecedent().empty())
        return {SeparationStatus::empty_antecedent, std::nullopt};

    const FiniteDomain& a = t.domain_a();
    const FiniteDomain& b = t.domain_b();
    const int n = static_cast<int>(c.antecedent().size());
    const int m = c.arity();
    const std::uint64_t positions = detail::pow_u64(
        static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(n));
    cfg.check_table_bits(detail::table_bits(positions, b.size()),
                         "separating_function");
    cfg.check_candidates(detail::pow_d(b.size(), positions),
                         "separating_function");

    // first m rows of M: row i is (d1(i) ... dn(i)) over the antecedent
    // tuples d1..dn in canonical order; these index straight into g's table
    std::vector<std::uint32_t> first_rows;
    for (int i = 0; i < m; ++i) {
        std::uint64_t idx = 0;
        for (const Tuple& d : c.antecedent().tuples())
            idx = idx * static_cast<std::uint64_t>(a.size()) +
                  static_cast<std::uint64_t>(d(i));
        first_rows.push_back(static_cast<std::uint32_t>(idx));
    }
    const auto s_mask = c.consequent().membership_mask();
    const auto compiled = detail::compile_all(t.members(), n, cfg);
    const std::uint64_t tables = detail::pow_u64(
        static_cast<std::uint64_t>(b.size()), positions);

    auto candidate_ok = [&](std::uint64_t idx) {
        thread_local std::vector<int> table;
        table.resize(positions);
        detail::decode_table(idx, b.size(), table);
        std::uint64_t out = 0;
        for (std::uint32_t r : first_rows)
            out = out * static_cast<std::uint64_t>(b.size()) +
                  static_cast<std::uint64_t>(table[r]);
        if (s_mask[out]) return false; // does not violate c via M
        for (const auto& cc : compiled)
            if (!cc.satisfied_by(table)) return false;
        return true;
    };
    const std::uint64_t won = detail::find_min_index(tables, cfg.jobs, candidate_ok);
    if (won == tables) return {SeparationStatus::exhausted, std::nullopt};

    std::vector<int> table(positions);
    detail::decode_table(won, b.size(), table);
    FiniteFunction g(n, a, b, std::move(table));
    for (const Constraint& member : t.members())
        if (!satisfies(g, member))
            throw error("separating_function: internal witness check failed "
                        "(witness violates a set member)");
    if (satisfies(g, c))
        throw error("separating_function: internal witness check failed "
                    "(witness satisfies the constraint)");
    return {SeparationStatus::found, std::move(g)};
}

/// Adds every constraint all of whose relaxations lie in T. Antecedents are
/// finite here, so every constraint is a relaxation of itself and the
/// operator is the identity; it is computed literally and checked.
inline ConstraintSet local_closure_constraints(const ConstraintSet& t,
                                               const ExecConfig& cfg = {}) {
    const FiniteDomain& a = t.domain_a();
    const FiniteDomain& b = t.domain_b();
    std::vector<Constraint> members = t.members();
    std::map<int, std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_arity;
    for (const Constraint& c : t.members()) {
        std::uint64_t rmask = 0, smask = 0;
        for (const Tuple& x : c.antecedent().tuples())
            rmask |= std::uint64_t{1} << encode_point(x, a);
        for (const Tuple& x : c.consequent().tuples())
            smask |= std::uint64_t{1} << encode_point(x, b);
        by_arity[c.arity()].push_back({rmask, smask});
    }
    for (auto& [arity, masks] : by_arity) std::sort(masks.begin(), masks.end());

    for (int m = 1; m <= t.arity_bound(); ++m) {
        const std::uint64_t na = detail::pow_u64(
            static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(m));
        const std::uint64_t nb = detail::pow_u64(
            static_cast<std::uint64_t>(b.size()), static_cast<std::uint64_t>(m));
        const double pairs = detail::pow_d(2, na) * detail::pow_d(2, nb);
        cfg.check_candidates(pairs * pairs, "local_closure_constraints");
        const std::vector<Tuple> a_tuples = all_tuples(a, m);
        const std::vector<Tuple> b_tuples = all_tuples(b, m);
        const auto& present = by_arity[m];
        auto member = [&](std::uint64_t rm, std::uint64_t sm) {
            return std::binary_search(present.begin(), present.end(),
                                      std::make_pair(rm, sm));
        };
        const std::uint64_t full_s = (nb == 64) ? ~std::uint64_t{0}
                                                : ((std::uint64_t{1} << nb) - 1);
        for (std::uint64_t rmask = 0; rmask < (std::uint64_t{1} << na); ++rmask) {
            for (std::uint64_t smask = 0; smask < (std::uint64_t{1} << nb);
                 ++smask) {
                bool all_relaxations_present = true;
                // submasks of rmask paired with supersets of smask
                std::uint64_t rsub = rmask;
                for (;;) {
                    const std::uint64_t extra_space = full_s & ~smask;
                    std::uint64_t ssup = 0;
                    for (;;) {
                        if (!member(rsub, smask | ssup)) {
                            all_relaxations_present = false;
                            break;
                        }
                        if (ssup == extra_space) break;
                        ssup = (ssup - extra_space) & extra_space;
                    }
                    if (!all_relaxations_present) break;
                    if (rsub == 0) break;
                    rsub = (rsub - 1) & rmask;
                }
                if (all_relaxations_present) {
                    std::vector<Tuple> rts, sts;
                    for (std::uint64_t i = 0; i < na; ++i)
                        if ((rmask >> i) & 1) rts.push_back(a_tuples[i]);
                    for (std::uint64_t i = 0; i < nb; ++i)
                        if ((smask >> i) & 1) sts.push_back(b_tuples[i]);
                    members.push_back(Constraint(Relation(m, a, std::move(rts)),
                                                 Relation(m, b, std::move(sts))));
                }
            }
        }
    }
    ConstraintSet out(a, b, std::move(members), t.arity_bound());
    if (!(out == t))
        throw error("local_closure_constraints: not the identity on a finite "
                    "domain; this indicates a bug");
    return out;
}

/// Outcome of one separation attempt in a round-trip report.
struct RoundtripEntry {
    FiniteFunction function;
    SeparationStatus status;
    std::optional<Constraint> witness;
    bool class_side_verified = false;
    bool violation_verified = false;
};

/// The constructive reading of class definability at desk scale: every
/// function outside K (up to the bound) gets a separating constraint, both
/// witness conditions re-verified by independent satisfaction calls.
/// A "not separated within bounds" outcome is recorded as such rather than
/// being folded into membership.
struct GaloisRoundtripReport {
    int arity_bound = 0;
    std::size_t class_size = 0;
    std::vector<RoundtripEntry> entries;
    std::string note;

    bool all_separated() const {
        for (const RoundtripEntry& e : entries)
            if (e.status != SeparationStatus::found || !e.class_side_verified ||
                !e.violation_verified)
                return false;
        return true;
    }
};

inline GaloisRoundtripReport galois_roundtrip_report(const FunctionClass& k,
                                                     int arity_bound,
                                                     const ExecConfig& cfg = {}) {
    if (!is_substitution_closed(k))
        throw precondition_error("galois_roundtrip_report: class is not closed "
                                 "under simple variable substitutions");
    GaloisRoundtripReport report;
    report.arity_bound = arity_bound;
    report.class_size = k.size();
    if (k.empty())
        report.note = "empty class: every function is separated by a "
                      "singleton antecedent with empty consequent";
    const FiniteDomain& a = k.input_domain();
    const FiniteDomain& b = k.output_domain();
    for (int n = 1; n <= arity_bound; ++n) {
        const std::uint64_t positions = detail::pow_u64(
            static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(n));
        cfg.check_table_bits(detail::table_bits(positions, b.size()),
                             "galois_roundtrip_report");
        cfg.check_candidates(detail::pow_d(b.size(), positions),
                             "galois_roundtrip_report");
        const std::uint64_t tables = detail::pow_u64(
            static_cast<std::uint64_t>(b.size()), positions);
        std::vector<int> table(positions);
        for (std::uint64_t idx = 0; idx < tables; ++idx) {
            detail::decode_table(idx, b.size(), table);
            FiniteFunction g(n, a, b, table);
            if (k.contains(g)) continue;
            RoundtripEntry entry{g, SeparationStatus::exhausted, std::nullopt,
                                 false, false};
            try {
                ConstraintSeparation sep = separating_constraint(k, g, cfg);
                entry.status = sep.status;
                if (sep.found()) {
                    entry.witness = sep.witness;
                    entry.class_side_verified = true;
                    for (const FiniteFunction& f : k.members())
                        if (!satisfies(f, *sep.witness)) {
                            entry.class_side_verified = false;
                            break;
                        }
                    entry.violation_verified = !satisfies(g, *sep.witness);
                }
            } catch (const budget_error&) {
                entry.status = SeparationStatus::exhausted;
            }
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

} // namespace relcon

#endif
