#ifndef RELCON_PARTIALS_HPP
#define RELCON_PARTIALS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "relcon/config.hpp"
#include "relcon/core.hpp"
#include "relcon/minors.hpp"
#include "relcon/satisfaction.hpp"

namespace relcon {

/// A finite set of partial functions sharing domains; membership is
/// extensional (graph equality).
class PartialFamily {
  public:
    PartialFamily(FiniteDomain a, FiniteDomain b,
                  std::vector<PartialFunction> members = {})
        : a_(std::move(a)), b_(std::move(b)), members_(std::move(members)) {
        for (const PartialFunction& p : members_) {
            require_same_domain(p.input_domain(), a_, "partial family");
            require_same_domain(p.output_domain(), b_, "partial family");
        }
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()),
                       members_.end());
    }

    const FiniteDomain& domain_a() const { return a_; }
    const FiniteDomain& domain_b() const { return b_; }
    const std::vector<PartialFunction>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }

  private:
    FiniteDomain a_;
    FiniteDomain b_;
    std::vector<PartialFunction> members_;
};

/// Every partial function of the given arity (all subsets of A^n, all value
/// assignments). Grows as (|B|+1)^(|A|^n); callers keep arities tiny.
inline std::vector<PartialFunction> all_partial_functions(const FiniteDomain& a,
                                                          const FiniteDomain& b,
                                                          int arity) {
    const std::uint64_t points = detail::pow_u64(
        static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(arity));
    std::vector<PartialFunction> out;
    // mixed-radix counter: digit |B| means "undefined here"
    std::vector<int> digit(points, b.size());
    for (;;) {
        std::map<std::uint64_t, int> graph;
        for (std::uint64_t p = 0; p < points; ++p)
            if (digit[p] < b.size()) graph[p] = digit[p];
        out.push_back(PartialFunction(arity, a, b, std::move(graph)));
        std::uint64_t p = points;
        while (p > 0 && digit[p - 1] == 0) digit[--p] = b.size();
        if (p == 0) break;
        --digit[p - 1];
    }
    return out;
}

/// The injective partial functions of the given arity.
inline std::vector<PartialFunction> injective_partial_functions(
    const FiniteDomain& a, const FiniteDomain& b, int arity) {
    std::vector<PartialFunction> out;
    for (PartialFunction& p : all_partial_functions(a, b, arity)) {
        std::vector<std::uint8_t> used(static_cast<std::size_t>(b.size()), 0);
        bool injective = true;
        for (const auto& [point, value] : p.graph()) {
            if (used[static_cast<std::size_t>(value)]) {
                injective = false;
                break;
            }
            used[static_cast<std::size_t>(value)] = 1;
        }
        if (injective) out.push_back(std::move(p));
    }
    return out;
}

struct ExtensibilityResult {
    bool extensible = false;
    /// On failure: the member and the point it cannot be extended to.
    std::optional<std::pair<PartialFunction, Tuple>> counterexample;
};

/// Checks the one-point extension property: for every member p and every
/// point y outside its domain, the family contains an extension of p to
/// dom(p) u {y}. The empty family is vacuously extensible.
inline ExtensibilityResult is_extensible_family(const PartialFamily& family) {
    for (const PartialFunction& p : family.members()) {
        const std::uint64_t points = detail::pow_u64(
            static_cast<std::uint64_t>(family.domain_a().size()),
            static_cast<std::uint64_t>(p.arity()));
        for (std::uint64_t y = 0; y < points; ++y) {
            if (p.defined_at(y)) continue;
            bool extended = false;
            for (const PartialFunction& q : family.members()) {
                if (q.arity() != p.arity()) continue;
                if (q.domain_size() != p.domain_size() + 1) continue;
                if (q.defined_at(y) && q.extends(p)) {
                    extended = true;
                    break;
                }
            }
            if (!extended)
                return {false,
                        std::make_pair(p, decode_point(y, p.arity(),
                                                       family.domain_a()))};
        }
    }
    return {true, std::nullopt};
}

/// Compact handle on the set of constraints satisfied by a whole family,
/// stored per arity as (antecedent mask, consequent mask) pairs.
struct FamilyConstraintTable {
    FiniteDomain a, b;
    int arity_bound = 0;
    std::map<int, std::vector<std::pair<std::uint64_t, std::uint64_t>>> masks;

    bool contains(const Constraint& c) const {
        auto it = masks.find(c.arity());
        if (it == masks.end()) return false;
        std::uint64_t rmask = 0, smask = 0;
        for (const Tuple& t : c.antecedent().tuples())
            rmask |= std::uint64_t{1} << encode_point(t, a);
        for (const Tuple& t : c.consequent().tuples())
            smask |= std::uint64_t{1} << encode_point(t, b);
        return std::binary_search(it->second.begin(), it->second.end(),
                                  std::make_pair(rmask, smask));
    }

    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& [arity, v] : masks) n += v.size();
        return n;
    }

    Constraint materialize(int arity, std::size_t index) const {
        const auto& [rmask, smask] = masks.at(arity)[index];
        std::vector<Tuple> rts, sts;
        for (const Tuple& t : all_tuples(a, arity))
            if ((rmask >> encode_point(t, a)) & 1) rts.push_back(t);
        for (const Tuple& t : all_tuples(b, arity))
            if ((smask >> encode_point(t, b)) & 1) sts.push_back(t);
        return Constraint(Relation(arity, a, std::move(rts)),
                          Relation(arity, b, std::move(sts)));
    }
};

/// The constraints of arity up to the bound satisfied by every member of
/// the family under partial satisfaction. For each antecedent the union of
/// all members' achievable images is computed once; (R,S) is satisfied by
/// the whole family iff that union is inside S.
inline FamilyConstraintTable family_constraint_table(const PartialFamily& family,
                                                     int arity_bound,
                                                     const ExecConfig& cfg = {}) {
    const FiniteDomain& a = family.domain_a();
    const FiniteDomain& b = family.domain_b();
    FamilyConstraintTable out{a, b, arity_bound, {}};
    for (int m = 1; m <= arity_bound; ++m) {
        const std::uint64_t na = detail::pow_u64(
            static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(m));
        const std::uint64_t nb = detail::pow_u64(
            static_cast<std::uint64_t>(b.size()), static_cast<std::uint64_t>(m));
        cfg.check_candidates(detail::pow_d(2, na) * detail::pow_d(2, nb),
                             "family_constraint_table");
        const std::vector<Tuple> a_tuples = all_tuples(a, m);
        auto& bucket = out.masks[m];
        for (std::uint64_t rmask = 0; rmask < (std::uint64_t{1} << na); ++rmask) {
            std::vector<Tuple> rts;
            for (std::uint64_t i = 0; i < na; ++i)
                if ((rmask >> i) & 1) rts.push_back(a_tuples[i]);
            Relation r(m, a, std::move(rts));
            std::uint64_t image = 0;
            for (const PartialFunction& p : family.members()) {
                cfg.check_candidates(
                    detail::pow_d(static_cast<int>(r.size()),
                                  static_cast<std::uint64_t>(p.arity())),
                    "family_constraint_table (matrices)");
                detail::for_each_matrix(
                    r, p.arity(),
                    [&](const std::vector<std::uint64_t>& rows,
                        const std::vector<std::size_t>&) {
                        for (std::uint64_t row : rows)
                            if (!p.defined_at(row)) return true;
                        std::uint64_t enc = 0;
                        for (std::uint64_t row : rows)
                            enc = enc * static_cast<std::uint64_t>(b.size()) +
                                  static_cast<std::uint64_t>(p.value_at(row));
                        image |= std::uint64_t{1} << enc;
                        return true;
                    });
            }
            for (std::uint64_t smask = 0; smask < (std::uint64_t{1} << nb);
                 ++smask)
                if ((image & ~smask) == 0) bucket.push_back({rmask, smask});
        }
        std::sort(bucket.begin(), bucket.end());
    }
    return out;
}

/// Report of the closure-property harness over an extensible family.
struct Prop1Report {
    std::size_t family_size = 0;
    int arity_bound = 0;
    std::map<int, std::size_t> table_sizes; // per-arity counts of satisfied pairs
    bool has_equality = false;
    bool has_empty = false;
    std::size_t trials = 0;
    std::vector<std::string> violations;

    bool ok() const {
        return has_equality && has_empty && violations.empty();
    }
};

/// Spot-checks, on seeded random samples, that the constraints satisfied by
/// an extensible family contain the equality and empty constraints and are
/// closed under intersecting consequents, simple minors that stay within
/// the arity bound, and relaxations. The extensibility hypothesis is
/// checked first and a failing family is rejected.
inline Prop1Report proposition1_harness(const PartialFamily& family,
                                        std::size_t trials, int arity_bound,
                                        std::uint64_t seed = 1,
                                        const ExecConfig& cfg = {}) {
    ExtensibilityResult ext = is_extensible_family(family);
    if (!ext.extensible)
        throw precondition_error(
            "proposition1_harness: family is not extensible (a member cannot "
            "be extended to one more point)");
    if (arity_bound < 2)
        throw mismatch_error("proposition1_harness: arity bound must be >= 2 "
                             "(the equality constraint is binary)");

    const FiniteDomain& a = family.domain_a();
    const FiniteDomain& b = family.domain_b();
    FamilyConstraintTable table = family_constraint_table(family, arity_bound, cfg);

    Prop1Report report;
    report.family_size = family.size();
    report.arity_bound = arity_bound;
    for (const auto& [m, v] : table.masks) report.table_sizes[m] = v.size();
    report.has_equality = table.contains(equality_constraint(a, b));
    report.has_empty = true;
    for (int m = 1; m <= arity_bound; ++m)
        report.has_empty = report.has_empty &&
                           table.contains(empty_constraint(a, b, m));

    std::mt19937_64 rng(seed);
    auto sample = [&](int arity) -> std::optional<Constraint> {
        const auto it = table.masks.find(arity);
        if (it == table.masks.end() || it->second.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
        return table.materialize(arity, pick(rng));
    };
    std::uniform_int_distribution<int> arity_pick(1, arity_bound);
    std::uniform_int_distribution<int> kind_pick(0, 2);

    for (std::size_t trial = 0; trial < trials; ++trial) {
        const int kind = kind_pick(rng);
        const int m = arity_pick(rng);
        auto first = sample(m);
        if (!first) continue;
        ++report.trials;
        if (kind == 0) {
            // intersecting consequents: pick another satisfied consequent
            // over the same antecedent (the bucket is sorted by antecedent)
            const auto& bucket = table.masks.at(m);
            std::uint64_t rmask = 0;
            for (const Tuple& t : first->antecedent().tuples())
                rmask |= std::uint64_t{1} << encode_point(t, a);
            auto lo = std::lower_bound(bucket.begin(), bucket.end(),
                                       std::make_pair(rmask, std::uint64_t{0}));
            auto hi = std::upper_bound(bucket.begin(), bucket.end(),
                                       std::make_pair(rmask, ~std::uint64_t{0}));
            std::uniform_int_distribution<std::size_t> pick(
                0, static_cast<std::size_t>(hi - lo) - 1);
            Constraint other = table.materialize(
                m, static_cast<std::size_t>(lo - bucket.begin()) + pick(rng));
            Constraint meet = intersect_consequents({*first, other});
            if (!table.contains(meet))
                report.violations.push_back(
                    "intersection of consequents left the table at trial " +
                    std::to_string(trial));
        } else if (kind == 1) {
            // a random simple minor whose target stays within the bound
            std::uniform_int_distribution<int> target_pick(1, arity_bound);
            const int target = target_pick(rng);
            std::uniform_int_distribution<int> indets_pick(0, 2);
            const int n_indets = indets_pick(rng);
            std::vector<std::string> indets;
            for (int v = 0; v < n_indets; ++v)
                indets.push_back("v" + std::to_string(v));
            std::vector<SchemeEntry> h;
            std::uniform_int_distribution<int> entry_pick(
                0, target + n_indets - 1);
            for (int i = 0; i < first->arity(); ++i) {
                const int e = entry_pick(rng);
                if (e < target)
                    h.push_back(SchemeEntry::target(e));
                else
                    h.push_back(SchemeEntry::indeterminate(
                        indets[static_cast<std::size_t>(e - target)]));
            }
            Constraint minor = simple_minor(*first, h, target, indets, cfg);
            if (!table.contains(minor))
                report.violations.push_back(
                    "simple minor left the table at trial " +
                    std::to_string(trial));
        } else {
            // a random relaxation
            std::vector<Tuple> rts;
            for (const Tuple& t : first->antecedent().tuples())
                if (rng() % 2) rts.push_back(t);
            std::vector<Tuple> sts = first->consequent().tuples();
            for (const Tuple& t : all_tuples(b, m))
                if (!first->consequent().contains(t) && rng() % 2)
                    sts.push_back(t);
            Constraint relaxed = relax(*first,
                                       Relation(m, a, std::move(rts)),
                                       Relation(m, b, std::move(sts)));
            if (!table.contains(relaxed))
                report.violations.push_back("relaxation left the table at trial " +
                                            std::to_string(trial));
        }
    }
    return report;
}

} // namespace relcon

#endif
