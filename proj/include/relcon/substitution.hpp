#ifndef RELCON_SUBSTITUTION_HPP
#define RELCON_SUBSTITUTION_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "relcon/config.hpp"
#include "relcon/core.hpp"

namespace relcon {

/// A canonically ordered set of B-valued functions on A of mixed arities.
/// The arity bound makes the truncation of "all arities" explicit; every
/// closure operation in the library carries one.
class FunctionClass {
  public:
    FunctionClass(FiniteDomain input_domain, FiniteDomain output_domain,
                  std::vector<FiniteFunction> members = {}, int arity_bound = 0)
        : input_(std::move(input_domain)),
          output_(std::move(output_domain)),
          members_(std::move(members)),
          arity_bound_(arity_bound) {
        for (const FiniteFunction& f : members_) {
            require_same_domain(f.input_domain(), input_, "function class");
            require_same_domain(f.output_domain(), output_, "function class");
            arity_bound_ = std::max(arity_bound_, f.arity());
        }
        if (arity_bound_ < 1) arity_bound_ = 1;
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()),
                       members_.end());
    }

    const FiniteDomain& input_domain() const { return input_; }
    const FiniteDomain& output_domain() const { return output_; }
    const std::vector<FiniteFunction>& members() const { return members_; }
    int arity_bound() const { return arity_bound_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    bool contains(const FiniteFunction& f) const {
        return std::binary_search(members_.begin(), members_.end(), f);
    }

    std::vector<FiniteFunction> members_of_arity(int n) const {
        std::vector<FiniteFunction> out;
        for (const FiniteFunction& f : members_)
            if (f.arity() == n) out.push_back(f);
        return out;
    }

    FunctionClass with_member(FiniteFunction f) const {
        std::vector<FiniteFunction> ms = members_;
        ms.push_back(std::move(f));
        return FunctionClass(input_, output_, std::move(ms), arity_bound_);
    }

    friend bool operator==(const FunctionClass& a, const FunctionClass& b) {
        return a.input_ == b.input_ && a.output_ == b.output_ &&
               a.members_ == b.members_;
    }

  private:
    FiniteDomain input_;
    FiniteDomain output_;
    std::vector<FiniteFunction> members_;
    int arity_bound_;
};

/// Simple variable substitution: g(a) = f(a o l) for every m-tuple a.
/// Subsumes permutation, identification and cylindrification of arguments.
inline FiniteFunction substitute(const FiniteFunction& f, const IndexMap& l) {
    if (l.source_arity() != f.arity())
        throw mismatch_error("substitute: index map source arity " +
                             std::to_string(l.source_arity()) +
                             " != function arity " + std::to_string(f.arity()));
    const FiniteDomain& a = f.input_domain();
    const int m = l.target_arity();
    std::vector<int> table;
    for (const Tuple& arg : all_tuples(a, m)) {
        std::uint64_t idx = 0;
        for (int i = 0; i < f.arity(); ++i)
            idx = idx * static_cast<std::uint64_t>(a.size()) +
                  static_cast<std::uint64_t>(arg(l(i)));
        table.push_back(f.at_index(idx));
    }
    return FiniteFunction(m, a, f.output_domain(), std::move(table));
}

namespace detail {

/// All index maps n -> m in lexicographic order of their image sequences.
inline std::vector<IndexMap> all_index_maps(int n, int m) {
    std::vector<IndexMap> out;
    std::vector<int> images(static_cast<std::size_t>(n), 0);
    for (;;) {
        out.push_back(IndexMap(n, m, images));
        int i = n - 1;
        while (i >= 0 && images[static_cast<std::size_t>(i)] + 1 == m) {
            images[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++images[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace detail

/// Least superset of K closed under simple variable substitutions with
/// target arity up to the bound, computed as a fixpoint. Substitutions may
/// raise or lower arity; members above the bound are kept as given.
inline FunctionClass svs_closure(const FunctionClass& k, int arity_bound) {
    if (arity_bound < 1)
        throw mismatch_error("svs_closure: arity bound must be positive");
    std::set<FiniteFunction> closed(k.members().begin(), k.members().end());
    std::vector<FiniteFunction> frontier(closed.begin(), closed.end());
    while (!frontier.empty()) {
        std::vector<FiniteFunction> next;
        for (const FiniteFunction& f : frontier) {
            for (int m = 1; m <= arity_bound; ++m) {
                for (const IndexMap& l : detail::all_index_maps(f.arity(), m)) {
                    FiniteFunction g = substitute(f, l);
                    if (closed.insert(g).second) next.push_back(std::move(g));
                }
            }
        }
        frontier = std::move(next);
    }
    int bound = arity_bound;
    for (const FiniteFunction& f : k.members()) bound = std::max(bound, f.arity());
    return FunctionClass(k.input_domain(), k.output_domain(),
                         std::vector<FiniteFunction>(closed.begin(), closed.end()),
                         bound);
}

inline bool is_substitution_closed(const FunctionClass& k) {
    return svs_closure(k, k.arity_bound()) == k;
}

/// The functions every finite restriction of which agrees with a restriction
/// of some member of K, by literal enumeration of all subsets of A^n. On
/// finite domains this is exactly K (the full subset forces membership);
/// the operator is kept literal so that fact stays a checked theorem rather
/// than an assumption.
inline FunctionClass local_closure_functions(const FunctionClass& k,
                                             const ExecConfig& cfg = {}) {
    std::vector<FiniteFunction> out;
    if (k.empty())
        return FunctionClass(k.input_domain(), k.output_domain(), {},
                             k.arity_bound());
    const FiniteDomain& a = k.input_domain();
    const FiniteDomain& b = k.output_domain();
    for (int n = 1; n <= k.arity_bound(); ++n) {
        const std::uint64_t positions = detail::pow_u64(
            static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(n));
        cfg.check_table_bits(detail::table_bits(positions, b.size()),
                             "local_closure_functions");
        cfg.check_candidates(detail::pow_d(b.size(), positions) *
                                 detail::pow_d(2, positions),
                             "local_closure_functions");
        std::vector<const FiniteFunction*> same_arity;
        for (const FiniteFunction& g : k.members())
            if (g.arity() == n) same_arity.push_back(&g);

        const std::uint64_t tables = detail::pow_u64(
            static_cast<std::uint64_t>(b.size()), positions);
        std::vector<int> table(positions);
        for (std::uint64_t t = 0; t < tables; ++t) {
            std::uint64_t rest = t;
            for (std::uint64_t p = positions; p-- > 0;) {
                table[p] = static_cast<int>(rest % static_cast<std::uint64_t>(b.size()));
                rest /= static_cast<std::uint64_t>(b.size());
            }
            bool all_subsets_ok = true;
            for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << positions);
                 ++subset) {
                bool some_member_agrees = false;
                for (const FiniteFunction* g : same_arity) {
                    bool agrees = true;
                    for (std::uint64_t p = 0; p < positions; ++p)
                        if ((subset >> p) & 1)
                            if (g->at_index(p) != table[p]) {
                                agrees = false;
                                break;
                            }
                    if (agrees) {
                        some_member_agrees = true;
                        break;
                    }
                }
                if (!some_member_agrees) {
                    all_subsets_ok = false;
                    break;
                }
            }
            if (all_subsets_ok)
                out.push_back(FiniteFunction(n, a, b, table));
        }
    }
    return FunctionClass(k.input_domain(), k.output_domain(), std::move(out),
                         k.arity_bound());
}

} // namespace relcon

#endif
