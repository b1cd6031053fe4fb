#ifndef RELCON_CORE_HPP
#define RELCON_CORE_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relcon/errors.hpp"

namespace relcon {

/// A named finite carrier set; elements are the dense integers 0..size-1.
/// Named elements are a CLI-level aliasing concern, not a library one.
class FiniteDomain {
  public:
    FiniteDomain() : name_("?"), size_(1) {}

    FiniteDomain(std::string name, int size)
        : name_(std::move(name)), size_(size) {
        if (size_ < 1)
            throw mismatch_error("domain '" + name_ + "' must be non-empty");
    }

    const std::string& name() const { return name_; }
    int size() const { return size_; }

    bool contains(int element) const { return element >= 0 && element < size_; }

    friend bool operator==(const FiniteDomain&, const FiniteDomain&) = default;

  private:
    std::string name_;
    int size_;
};

inline void require_same_domain(const FiniteDomain& a, const FiniteDomain& b,
                                const std::string& who) {
    if (!(a == b))
        throw mismatch_error(who + ": domain mismatch (" + a.name() + " vs " +
                             b.name() + ")");
}

/// An m-tuple over a finite domain. Arity is always positive.
class Tuple {
  public:
    Tuple(std::vector<int> entries, FiniteDomain domain)
        : entries_(std::move(entries)), domain_(std::move(domain)) {
        if (entries_.empty())
            throw mismatch_error("tuple arity must be positive");
        for (int e : entries_)
            if (!domain_.contains(e))
                throw mismatch_error("tuple entry " + std::to_string(e) +
                                     " outside domain " + domain_.name() +
                                     " of size " + std::to_string(domain_.size()));
    }

    int arity() const { return static_cast<int>(entries_.size()); }
    const std::vector<int>& entries() const { return entries_; }
    int operator()(int i) const { return entries_[static_cast<std::size_t>(i)]; }
    const FiniteDomain& domain() const { return domain_; }

    friend bool operator==(const Tuple& a, const Tuple& b) {
        return a.domain_ == b.domain_ && a.entries_ == b.entries_;
    }
    friend std::strong_ordering operator<=>(const Tuple& a, const Tuple& b) {
        return a.entries_ <=> b.entries_;
    }

  private:
    std::vector<int> entries_;
    FiniteDomain domain_;
};

/// Row-major rank of a tuple within domain^arity: the first component is
/// the most significant digit. Bijective with decode_point.
inline std::uint64_t encode_point(const Tuple& t, const FiniteDomain& d) {
    require_same_domain(t.domain(), d, "encode_point");
    std::uint64_t index = 0;
    for (int e : t.entries())
        index = index * static_cast<std::uint64_t>(d.size()) +
                static_cast<std::uint64_t>(e);
    return index;
}

inline std::uint64_t encode_entries(const std::vector<int>& entries, int domain_size) {
    std::uint64_t index = 0;
    for (int e : entries)
        index = index * static_cast<std::uint64_t>(domain_size) +
                static_cast<std::uint64_t>(e);
    return index;
}

inline Tuple decode_point(std::uint64_t index, int arity, const FiniteDomain& d) {
    std::vector<int> entries(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
        entries[static_cast<std::size_t>(i)] =
            static_cast<int>(index % static_cast<std::uint64_t>(d.size()));
        index /= static_cast<std::uint64_t>(d.size());
    }
    return Tuple(std::move(entries), d);
}

/// All tuples of the given arity over d, in lexicographic (= encoded) order.
inline std::vector<Tuple> all_tuples(const FiniteDomain& d, int arity) {
    if (arity < 1) throw mismatch_error("arity must be positive");
    std::uint64_t count = 1;
    for (int i = 0; i < arity; ++i) count *= static_cast<std::uint64_t>(d.size());
    std::vector<Tuple> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx)
        out.push_back(decode_point(idx, arity, d));
    return out;
}

/// An m-ary relation: a canonically ordered, duplicate-free set of m-tuples.
/// The empty relation is representable at every arity.
class Relation {
  public:
    Relation(int arity, FiniteDomain domain, std::vector<Tuple> tuples = {})
        : arity_(arity), domain_(std::move(domain)), tuples_(std::move(tuples)) {
        if (arity_ < 1)
            throw mismatch_error("relation arity must be positive");
        for (const Tuple& t : tuples_) {
            if (t.arity() != arity_)
                throw mismatch_error("relation tuple arity " +
                                     std::to_string(t.arity()) + " != " +
                                     std::to_string(arity_));
            require_same_domain(t.domain(), domain_, "relation");
        }
        std::sort(tuples_.begin(), tuples_.end());
        tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
    }

    int arity() const { return arity_; }
    const FiniteDomain& domain() const { return domain_; }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }

    bool contains(const Tuple& t) const {
        return std::binary_search(tuples_.begin(), tuples_.end(), t);
    }

    bool subset_of(const Relation& other) const {
        check_comparable(other, "subset_of");
        return std::includes(other.tuples_.begin(), other.tuples_.end(),
                             tuples_.begin(), tuples_.end());
    }

    bool is_full() const {
        std::uint64_t full = 1;
        for (int i = 0; i < arity_; ++i)
            full *= static_cast<std::uint64_t>(domain_.size());
        return tuples_.size() == full;
    }

    /// Membership bitmap over encoded points; handy in enumeration loops.
    std::vector<std::uint8_t> membership_mask() const {
        std::uint64_t full = 1;
        for (int i = 0; i < arity_; ++i)
            full *= static_cast<std::uint64_t>(domain_.size());
        std::vector<std::uint8_t> mask(full, 0);
        for (const Tuple& t : tuples_)
            mask[encode_point(t, domain_)] = 1;
        return mask;
    }

    friend Relation operator&(const Relation& a, const Relation& b) {
        a.check_comparable(b, "intersection");
        std::vector<Tuple> out;
        std::set_intersection(a.tuples_.begin(), a.tuples_.end(),
                              b.tuples_.begin(), b.tuples_.end(),
                              std::back_inserter(out));
        return Relation(a.arity_, a.domain_, std::move(out));
    }

    friend Relation operator|(const Relation& a, const Relation& b) {
        a.check_comparable(b, "union");
        std::vector<Tuple> out;
        std::set_union(a.tuples_.begin(), a.tuples_.end(),
                       b.tuples_.begin(), b.tuples_.end(),
                       std::back_inserter(out));
        return Relation(a.arity_, a.domain_, std::move(out));
    }

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.arity_ == b.arity_ && a.domain_ == b.domain_ &&
               a.tuples_ == b.tuples_;
    }

    friend std::strong_ordering operator<=>(const Relation& a, const Relation& b) {
        if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
        return a.tuples_ <=> b.tuples_;
    }

  private:
    void check_comparable(const Relation& other, const std::string& who) const {
        if (arity_ != other.arity_)
            throw mismatch_error(who + ": relation arities differ");
        require_same_domain(domain_, other.domain_, who);
    }

    int arity_;
    FiniteDomain domain_;
    std::vector<Tuple> tuples_;
};

inline Relation empty_relation(const FiniteDomain& d, int arity) {
    return Relation(arity, d);
}

inline Relation full_relation(const FiniteDomain& d, int arity) {
    return Relation(arity, d, all_tuples(d, arity));
}

/// {(a,a) : a in d}
inline Relation equality_relation(const FiniteDomain& d) {
    std::vector<Tuple> ts;
    for (int a = 0; a < d.size(); ++a) ts.push_back(Tuple({a, a}, d));
    return Relation(2, d, std::move(ts));
}

/// {(a,b) : a != b}
inline Relation disequality_relation(const FiniteDomain& d) {
    std::vector<Tuple> ts;
    for (int a = 0; a < d.size(); ++a)
        for (int b = 0; b < d.size(); ++b)
            if (a != b) ts.push_back(Tuple({a, b}, d));
    return Relation(2, d, std::move(ts));
}

/// An m x n matrix over a domain, held as its n columns (m-tuples).
/// Repeated columns and repeated rows are both allowed; the constructions
/// on top of this type rely on both.
class Matrix {
  public:
    explicit Matrix(std::vector<Tuple> columns) : columns_(std::move(columns)) {
        if (columns_.empty())
            throw mismatch_error("matrix needs at least one column");
        for (const Tuple& c : columns_) {
            if (c.arity() != columns_.front().arity())
                throw mismatch_error("matrix columns must share arity");
            require_same_domain(c.domain(), columns_.front().domain(), "matrix");
        }
    }

    int rows() const { return columns_.front().arity(); }
    int cols() const { return static_cast<int>(columns_.size()); }
    const FiniteDomain& domain() const { return columns_.front().domain(); }
    const std::vector<Tuple>& columns() const { return columns_; }
    const Tuple& column(int j) const { return columns_[static_cast<std::size_t>(j)]; }

    /// Row i as an n-tuple.
    Tuple row(int i) const {
        std::vector<int> entries;
        entries.reserve(columns_.size());
        for (const Tuple& c : columns_) entries.push_back(c(i));
        return Tuple(std::move(entries), domain());
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.columns_ == b.columns_;
    }

  private:
    std::vector<Tuple> columns_;
};

/// The M < R test: every column of M is a member of R.
/// Monotone in R: if it holds for R it holds for any superset.
inline bool columns_in_relation(const Matrix& m, const Relation& r) {
    if (m.rows() != r.arity())
        throw mismatch_error("columns_in_relation: column arity " +
                             std::to_string(m.rows()) + " != relation arity " +
                             std::to_string(r.arity()));
    require_same_domain(m.domain(), r.domain(), "columns_in_relation");
    for (const Tuple& c : m.columns())
        if (!r.contains(c)) return false;
    return true;
}

/// A total map A^n -> B stored as a value table in row-major input order
/// (the first argument is the most significant index digit).
class FiniteFunction {
  public:
    FiniteFunction(int arity, FiniteDomain input_domain, FiniteDomain output_domain,
                   std::vector<int> table)
        : arity_(arity),
          input_(std::move(input_domain)),
          output_(std::move(output_domain)),
          table_(std::move(table)) {
        if (arity_ < 1)
            throw mismatch_error("function arity must be positive");
        std::uint64_t expect = 1;
        for (int i = 0; i < arity_; ++i)
            expect *= static_cast<std::uint64_t>(input_.size());
        if (table_.size() != expect)
            throw mismatch_error("function table has " +
                                 std::to_string(table_.size()) +
                                 " entries, expected " + std::to_string(expect));
        for (int v : table_)
            if (!output_.contains(v))
                throw mismatch_error("function value " + std::to_string(v) +
                                     " outside codomain " + output_.name());
    }

    int arity() const { return arity_; }
    const FiniteDomain& input_domain() const { return input_; }
    const FiniteDomain& output_domain() const { return output_; }
    const std::vector<int>& table() const { return table_; }
    std::uint64_t table_size() const { return table_.size(); }

    bool is_operation() const { return input_ == output_; }

    int operator()(const Tuple& args) const {
        if (args.arity() != arity_)
            throw mismatch_error("function applied to tuple of wrong arity");
        return table_[encode_point(args, input_)];
    }

    int at_index(std::uint64_t encoded) const {
        return table_[encoded];
    }

    friend bool operator==(const FiniteFunction& a, const FiniteFunction& b) {
        return a.arity_ == b.arity_ && a.input_ == b.input_ &&
               a.output_ == b.output_ && a.table_ == b.table_;
    }

    friend std::strong_ordering operator<=>(const FiniteFunction& a,
                                            const FiniteFunction& b) {
        if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
        return a.table_ <=> b.table_;
    }

  private:
    int arity_;
    FiniteDomain input_;
    FiniteDomain output_;
    std::vector<int> table_;
};

/// i-th projection of the given arity, as an operation on d.
inline FiniteFunction projection(const FiniteDomain& d, int arity, int index) {
    if (index < 0 || index >= arity)
        throw mismatch_error("projection index out of range");
    std::vector<int> table;
    for (const Tuple& t : all_tuples(d, arity)) table.push_back(t(index));
    return FiniteFunction(arity, d, d, std::move(table));
}

/// A map from argument positions n into positions m, the engine of simple
/// variable substitution.
class IndexMap {
  public:
    IndexMap(int source_arity, int target_arity, std::vector<int> images)
        : source_(source_arity), target_(target_arity), images_(std::move(images)) {
        if (source_ < 1 || target_ < 1)
            throw mismatch_error("index map arities must be positive");
        if (images_.size() != static_cast<std::size_t>(source_))
            throw mismatch_error("index map needs one image per source position");
        for (int i : images_)
            if (i < 0 || i >= target_)
                throw mismatch_error("index map image " + std::to_string(i) +
                                     " >= target arity " + std::to_string(target_));
    }

    int source_arity() const { return source_; }
    int target_arity() const { return target_; }
    const std::vector<int>& images() const { return images_; }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const IndexMap&, const IndexMap&) = default;

  private:
    int source_;
    int target_;
    std::vector<int> images_;
};

/// An ordered pair of same-arity relations: antecedent on A, consequent on B.
class Constraint {
  public:
    Constraint(Relation antecedent, Relation consequent)
        : antecedent_(std::move(antecedent)), consequent_(std::move(consequent)) {
        if (antecedent_.arity() != consequent_.arity())
            throw mismatch_error("constraint sides have different arities (" +
                                 std::to_string(antecedent_.arity()) + " vs " +
                                 std::to_string(consequent_.arity()) + ")");
    }

    int arity() const { return antecedent_.arity(); }
    const Relation& antecedent() const { return antecedent_; }
    const Relation& consequent() const { return consequent_; }

    friend bool operator==(const Constraint&, const Constraint&) = default;

    friend std::strong_ordering operator<=>(const Constraint& a, const Constraint& b) {
        if (auto c = a.arity() <=> b.arity(); c != 0) return c;
        if (auto c = a.antecedent_ <=> b.antecedent_; c != 0) return c;
        return a.consequent_ <=> b.consequent_;
    }

  private:
    Relation antecedent_;
    Relation consequent_;
};

} // namespace relcon

#endif
