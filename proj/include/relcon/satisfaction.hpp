#ifndef RELCON_SATISFACTION_HPP
#define RELCON_SATISFACTION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "relcon/config.hpp"
#include "relcon/core.hpp"

namespace relcon {

/// A B-valued map defined on a subset D of A^n, stored as a graph keyed by
/// encoded points. Compared extensionally.
class PartialFunction {
  public:
    PartialFunction(int arity, FiniteDomain input_domain, FiniteDomain output_domain,
                    std::map<std::uint64_t, int> graph)
        : arity_(arity),
          input_(std::move(input_domain)),
          output_(std::move(output_domain)),
          graph_(std::move(graph)) {
        if (arity_ < 1)
            throw mismatch_error("partial function arity must be positive");
        std::uint64_t full = 1;
        for (int i = 0; i < arity_; ++i)
            full *= static_cast<std::uint64_t>(input_.size());
        for (const auto& [point, value] : graph_) {
            if (point >= full)
                throw mismatch_error("partial function point outside A^n");
            if (!output_.contains(value))
                throw mismatch_error("partial function value outside codomain");
        }
    }

    static PartialFunction from_total(const FiniteFunction& f) {
        std::map<std::uint64_t, int> graph;
        for (std::uint64_t i = 0; i < f.table_size(); ++i)
            graph[i] = f.at_index(i);
        return PartialFunction(f.arity(), f.input_domain(), f.output_domain(),
                               std::move(graph));
    }

    int arity() const { return arity_; }
    const FiniteDomain& input_domain() const { return input_; }
    const FiniteDomain& output_domain() const { return output_; }
    const std::map<std::uint64_t, int>& graph() const { return graph_; }
    std::size_t domain_size() const { return graph_.size(); }

    bool defined_at(std::uint64_t point) const { return graph_.count(point) != 0; }
    bool defined_at(const Tuple& t) const {
        return defined_at(encode_point(t, input_));
    }
    int value_at(std::uint64_t point) const { return graph_.at(point); }
    int operator()(const Tuple& t) const {
        return graph_.at(encode_point(t, input_));
    }

    /// True when `other` agrees with this map on all of this map's domain.
    bool extends(const PartialFunction& other) const {
        for (const auto& [point, value] : other.graph_) {
            auto it = graph_.find(point);
            if (it == graph_.end() || it->second != value) return false;
        }
        return true;
    }

    friend bool operator==(const PartialFunction& a, const PartialFunction& b) {
        return a.arity_ == b.arity_ && a.input_ == b.input_ &&
               a.output_ == b.output_ && a.graph_ == b.graph_;
    }

    friend std::strong_ordering operator<=>(const PartialFunction& a,
                                            const PartialFunction& b) {
        if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
        return a.graph_ <=> b.graph_;
    }

  private:
    int arity_;
    FiniteDomain input_;
    FiniteDomain output_;
    std::map<std::uint64_t, int> graph_;
};

/// fM: the m-tuple whose i-th entry is f applied to row i of M.
inline Tuple apply_to_matrix(const FiniteFunction& f, const Matrix& m) {
    if (m.cols() != f.arity())
        throw mismatch_error("apply_to_matrix: matrix has " +
                             std::to_string(m.cols()) + " columns, function arity " +
                             std::to_string(f.arity()));
    require_same_domain(m.domain(), f.input_domain(), "apply_to_matrix");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        std::uint64_t idx = 0;
        for (int j = 0; j < m.cols(); ++j)
            idx = idx * static_cast<std::uint64_t>(f.input_domain().size()) +
                  static_cast<std::uint64_t>(m.column(j)(i));
        out.push_back(f.at_index(idx));
    }
    return Tuple(std::move(out), f.output_domain());
}

namespace detail {

/// Walks all m x n matrices M < R in lexicographic column order (columns
/// drawn from the canonical tuple order of R) and calls visit with the
/// m-tuple of encoded rows. visit returns false to stop early.
template <typename Visit>
void for_each_matrix(const Relation& r, int n, Visit&& visit) {
    if (r.empty()) return;
    const int m = r.arity();
    const int a_size = r.domain().size();
    const std::size_t count = r.size();
    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m));
    for (;;) {
        for (int i = 0; i < m; ++i) {
            std::uint64_t idx = 0;
            for (int j = 0; j < n; ++j)
                idx = idx * static_cast<std::uint64_t>(a_size) +
                      static_cast<std::uint64_t>(r.tuples()[choice[static_cast<std::size_t>(j)]](i));
            rows[static_cast<std::size_t>(i)] = idx;
        }
        if (!visit(static_cast<const std::vector<std::uint64_t>&>(rows), choice))
            return;
        int j = n - 1;
        while (j >= 0 && choice[static_cast<std::size_t>(j)] + 1 == count) {
            choice[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) return;
        ++choice[static_cast<std::size_t>(j)];
    }
}

/// A constraint precompiled against a fixed function arity n: the encoded
/// table positions of every matrix row, plus the consequent membership
/// mask. Lets a candidate-table scan test satisfaction with array reads only.
struct CompiledConstraint {
    int m = 0;
    int b_size = 0;
    std::vector<std::uint32_t> rows; // matrix-major, m entries per matrix
    std::vector<std::uint8_t> mask;  // membership over B^m

    bool satisfied_by(const std::vector<int>& table) const {
        const std::size_t stride = static_cast<std::size_t>(m);
        for (std::size_t r = 0; r < rows.size(); r += stride) {
            std::uint64_t out = 0;
            for (std::size_t i = 0; i < stride; ++i)
                out = out * static_cast<std::uint64_t>(b_size) +
                      static_cast<std::uint64_t>(table[rows[r + i]]);
            if (!mask[out]) return false;
        }
        return true;
    }
};

inline CompiledConstraint compile_constraint(const Constraint& c, int n,
                                             const ExecConfig& cfg) {
    cfg.check_candidates(pow_d(static_cast<int>(c.antecedent().size()),
                               static_cast<std::uint64_t>(n)),
                         "constraint compilation (matrices)");
    CompiledConstraint out;
    out.m = c.arity();
    out.b_size = c.consequent().domain().size();
    out.mask = c.consequent().membership_mask();
    for_each_matrix(c.antecedent(), n,
                    [&](const std::vector<std::uint64_t>& rows,
                        const std::vector<std::size_t>&) {
                        for (std::uint64_t r : rows)
                            out.rows.push_back(static_cast<std::uint32_t>(r));
                        return true;
                    });
    return out;
}

/// Compiles a whole constraint set, cheapest first so candidate rejection
/// fails fast. The ordering never changes results, only speed.
inline std::vector<CompiledConstraint> compile_all(
    const std::vector<Constraint>& cs, int n, const ExecConfig& cfg) {
    std::vector<CompiledConstraint> out;
    out.reserve(cs.size());
    for (const Constraint& c : cs) out.push_back(compile_constraint(c, n, cfg));
    std::stable_sort(out.begin(), out.end(),
                     [](const CompiledConstraint& x, const CompiledConstraint& y) {
                         return x.rows.size() < y.rows.size();
                     });
    return out;
}

inline void decode_table(std::uint64_t index, int b_size, std::vector<int>& table) {
    for (std::size_t p = table.size(); p-- > 0;) {
        table[p] = static_cast<int>(index % static_cast<std::uint64_t>(b_size));
        index /= static_cast<std::uint64_t>(b_size);
    }
}

} // namespace detail

/// fR: the image relation { fM : M < R }, computed by enumerating all
/// |R|^n column choices. Canonically ordered like every Relation.
inline Relation image_of_relation(const FiniteFunction& f, const Relation& r) {
    require_same_domain(r.domain(), f.input_domain(), "image_of_relation");
    const FiniteDomain& b = f.output_domain();
    std::vector<Tuple> out;
    detail::for_each_matrix(r, f.arity(), [&](const std::vector<std::uint64_t>& rows,
                                              const std::vector<std::size_t>&) {
        std::vector<int> entries;
        entries.reserve(rows.size());
        for (std::uint64_t row : rows) entries.push_back(f.at_index(row));
        out.push_back(Tuple(std::move(entries), b));
        return true;
    });
    return Relation(r.arity(), b, std::move(out));
}

/// First matrix M < antecedent (lexicographic column order) with fM outside
/// the consequent, or nullopt when f satisfies the constraint.
inline std::optional<Matrix> violating_matrix(const FiniteFunction& f,
                                              const Constraint& c) {
    require_same_domain(c.antecedent().domain(), f.input_domain(), "satisfies");
    require_same_domain(c.consequent().domain(), f.output_domain(), "satisfies");
    const auto mask = c.consequent().membership_mask();
    const int b_size = f.output_domain().size();
    const int m = c.arity();
    std::optional<Matrix> witness;
    detail::for_each_matrix(
        c.antecedent(), f.arity(),
        [&](const std::vector<std::uint64_t>& rows, const std::vector<std::size_t>& choice) {
            std::uint64_t out = 0;
            for (int i = 0; i < m; ++i)
                out = out * static_cast<std::uint64_t>(b_size) +
                      static_cast<std::uint64_t>(f.at_index(rows[static_cast<std::size_t>(i)]));
            if (!mask[out]) {
                std::vector<Tuple> cols;
                for (std::size_t j : choice) cols.push_back(c.antecedent().tuples()[j]);
                witness = Matrix(std::move(cols));
                return false;
            }
            return true;
        });
    return witness;
}

/// f satisfies (R,S) iff fR is contained in S. Short-circuits on the first
/// violating matrix.
inline bool satisfies(const FiniteFunction& f, const Constraint& c) {
    return !violating_matrix(f, c).has_value();
}

/// f preserves R iff f satisfies (R,R); only defined for operations.
inline bool preserves(const FiniteFunction& f, const Relation& r) {
    if (!f.is_operation())
        throw mismatch_error("preserves: function is not an operation");
    require_same_domain(f.input_domain(), r.domain(), "preserves");
    return satisfies(f, Constraint(r, r));
}

/// Partial satisfaction: only matrices all of whose rows lie in the domain
/// of p are required to land in the consequent.
inline bool partial_satisfies(const PartialFunction& p, const Constraint& c) {
    require_same_domain(c.antecedent().domain(), p.input_domain(),
                        "partial_satisfies");
    require_same_domain(c.consequent().domain(), p.output_domain(),
                        "partial_satisfies");
    const auto mask = c.consequent().membership_mask();
    const int b_size = p.output_domain().size();
    const int m = c.arity();
    bool ok = true;
    detail::for_each_matrix(
        c.antecedent(), p.arity(),
        [&](const std::vector<std::uint64_t>& rows, const std::vector<std::size_t>&) {
            for (std::uint64_t row : rows)
                if (!p.defined_at(row)) return true;
            std::uint64_t out = 0;
            for (int i = 0; i < m; ++i)
                out = out * static_cast<std::uint64_t>(b_size) +
                      static_cast<std::uint64_t>(p.value_at(rows[static_cast<std::size_t>(i)]));
            if (!mask[out]) {
                ok = false;
                return false;
            }
            return true;
        });
    return ok;
}

} // namespace relcon

#endif
