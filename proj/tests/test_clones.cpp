#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "relcon/relcon.hpp"

using namespace relcon;

namespace {
const FiniteDomain b2("A", 2);
const FiniteFunction and2(2, b2, b2, {0, 0, 0, 1});
const FiniteFunction nand2(2, b2, b2, {1, 1, 1, 0});
const FiniteFunction id1(1, b2, b2, {0, 1});
const FiniteFunction not1(1, b2, b2, {1, 0});
const Relation leq(2, b2, {Tuple({0, 0}, b2), Tuple({0, 1}, b2), Tuple({1, 1}, b2)});
} // namespace

TEST_CASE("composition evaluates inner functions pointwise") {
    // NAND of NAND with itself is AND
    CHECK(compose_functions(nand2, {nand2, nand2}) == and2);
    CHECK(compose_functions(not1, {not1}) == id1);
}

TEST_CASE("composition with projections is the identity") {
    FiniteFunction e1 = projection(b2, 2, 0), e2 = projection(b2, 2, 1);
    CHECK(compose_functions(and2, {e1, e2}) == and2);
    CHECK(compose_functions(e1, {and2, nand2}) == and2);
    CHECK_THROWS_AS(compose_functions(and2, {e1}), mismatch_error);
    CHECK_THROWS_AS(compose_functions(and2, {e1, id1}), mismatch_error);
}

TEST_CASE("the clone of NAND at bound 2 is everything") {
    FunctionClass clone = clone_generate(FunctionClass(b2, b2, {nand2}, 2), 2);
    CHECK(clone.size() == 20);
    CHECK(clone.members_of_arity(1).size() == 4);
    CHECK(clone.members_of_arity(2).size() == 16);
}

TEST_CASE("the empty clone is the projections") {
    FunctionClass clone = clone_generate(FunctionClass(b2, b2, {}, 2), 2);
    CHECK(clone.size() == 3);
    CHECK(clone.contains(id1));
    CHECK(clone.contains(projection(b2, 2, 0)));
    CHECK(clone.contains(projection(b2, 2, 1)));
}

TEST_CASE("the clone of AND adds nothing beyond AND itself") {
    FunctionClass clone = clone_generate(FunctionClass(b2, b2, {and2}, 2), 2);
    std::vector<FiniteFunction> expected{id1, projection(b2, 2, 0),
                                         projection(b2, 2, 1), and2};
    std::sort(expected.begin(), expected.end());
    CHECK(clone.members() == expected);
}

TEST_CASE("generated clones contain the projections and are "
          "composition-closed at the bound") {
    gen::Rng rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<FiniteFunction> fs;
        for (int i = 0; i < gen::pick(rng, 0, 2); ++i)
            fs.push_back(gen::random_function(rng, b2, b2, gen::pick(rng, 1, 2)));
        FunctionClass clone = clone_generate(FunctionClass(b2, b2, fs, 2), 2);
        CHECK(clone.contains(id1));
        CHECK(clone.contains(projection(b2, 2, 0)));
        for (const FiniteFunction& f : clone.members())
            for (int m = 1; m <= 2; ++m) {
                auto pool = clone.members_of_arity(m);
                if (pool.empty()) continue;
                std::vector<FiniteFunction> gs;
                for (int i = 0; i < f.arity(); ++i)
                    gs.push_back(pool[rng() % pool.size()]);
                CHECK(clone.contains(compose_functions(f, gs)));
            }
    }
}

TEST_CASE("pol of the order relation counts the monotone functions") {
    FunctionClass mono = pol({leq}, 2);
    CHECK(mono.members_of_arity(1).size() == 3);
    CHECK(mono.members_of_arity(2).size() == 6);
    CHECK(mono.size() == 9);
    // independent reading: monotone means f(x) <= f(y) whenever x <= y
    for (const FiniteFunction& f : mono.members_of_arity(2)) {
        for (const Tuple& x : all_tuples(b2, 2))
            for (const Tuple& y : all_tuples(b2, 2)) {
                if (x(0) <= y(0) && x(1) <= y(1))
                    CHECK(f(x) <= f(y));
            }
    }
    CHECK(pol({}, b2, 2).size() == 20);
    CHECK(pol({full_relation(b2, 1)}, 2).size() == 20);
}

TEST_CASE("inv of negation keeps the complement-closed relations") {
    FunctionClass neg(b2, b2, {not1}, 1);
    std::vector<Relation> preserved = inv(neg, 2);
    CHECK(preserved.size() == 6);
    int unary = 0, binary = 0;
    for (const Relation& r : preserved) {
        if (r.arity() == 1) ++unary;
        if (r.arity() == 2) ++binary;
        // closure under complementation, checked independently
        for (const Tuple& t : r.tuples()) {
            std::vector<int> flipped;
            for (int i = 0; i < t.arity(); ++i) flipped.push_back(1 - t(i));
            CHECK(r.contains(Tuple(flipped, b2)));
        }
    }
    CHECK(unary == 2);
    CHECK(binary == 4);

    CHECK(inv(FunctionClass(b2, b2, {}, 1), 1).size() == 4);
    FunctionClass all_unary = functions_satisfying(ConstraintSet(b2, b2), 1);
    std::vector<Relation> only_trivial = inv(all_unary, 1);
    CHECK(only_trivial == std::vector<Relation>{empty_relation(b2, 1),
                                                full_relation(b2, 1)});
}

TEST_CASE("pol and inv compose soundly over the generated clone") {
    gen::Rng rng(89);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<FiniteFunction> fs;
        for (int i = 0; i < gen::pick(rng, 0, 2); ++i)
            fs.push_back(gen::random_function(rng, b2, b2, gen::pick(rng, 1, 2)));
        FunctionClass f(b2, b2, fs, 2);
        FunctionClass closed = pol(inv(f, 2), b2, 2);
        FunctionClass clone = clone_generate(f, 2);
        for (const FiniteFunction& g : clone.members())
            CHECK(closed.contains(g));
    }
}

TEST_CASE("general superposition enumerates label assignments") {
    LabelSet pq({"p", "q"});
    Relation delta = disequality_relation(b2);
    CHECK(general_superposition({delta}, {"p", "q"}, {{"p", "q"}}, pq) == delta);
    CHECK(general_superposition({delta}, {"p", "p"}, {{"p", "q"}}, pq) ==
          equality_relation(b2));
    CHECK(general_superposition({empty_relation(b2, 2)}, {"p", "q"},
                                {{"p", "q"}}, pq) == empty_relation(b2, 2));
    CHECK_THROWS_AS(general_superposition({delta}, {"p", "z"}, {{"p", "q"}}, pq),
                    mismatch_error);
}

TEST_CASE("equality is a superposition of the full unary relation") {
    LabelSet single({"p"});
    Relation eq = general_superposition({full_relation(b2, 1)}, {"p", "p"},
                                        {{"p"}}, single);
    CHECK(eq == equality_relation(b2));
    // binary case over a singleton label produces the constant-pair tuples
    Relation constants = general_superposition({full_relation(b2, 1)},
                                               {"p", "p", "p"}, {{"p"}}, single);
    CHECK(constants == Relation(3, b2, {Tuple({0, 0, 0}, b2),
                                        Tuple({1, 1, 1}, b2)}));
}

TEST_CASE("equality patterns are block-constant tuples") {
    CHECK(equality_pattern_relation({"p", "q"}, b2) == full_relation(b2, 2));
    CHECK(equality_pattern_relation({"p", "p"}, b2) == equality_relation(b2));
    Relation pattern = equality_pattern_relation({"p", "q", "p"}, b2);
    CHECK(pattern.size() == 4);
    for (const Tuple& t : pattern.tuples()) CHECK(t(0) == t(2));
}

TEST_CASE("superpositions decompose into a tight minor and an equality "
          "pattern") {
    LabelSet pq({"p", "q"});
    Relation delta = disequality_relation(b2);
    SuperpositionDecomposition d =
        superposition_decomposition({"p", "p"}, {{"p", "q"}}, pq, {delta});
    CHECK(d.matches);
    CHECK(d.tight == full_relation(b2, 2));
    CHECK(d.equality_pattern == equality_relation(b2));
    CHECK(d.superposition == equality_relation(b2));

    SuperpositionDecomposition identity =
        superposition_decomposition({"p", "q"}, {{"p", "q"}}, pq, {delta});
    CHECK(identity.matches);
    CHECK(identity.tight == delta);
    CHECK(identity.equality_pattern == full_relation(b2, 2));
}

TEST_CASE("the decomposition holds on random instances") {
    gen::Rng rng(97);
    const std::vector<std::string> pool{"p", "q", "r", "s"};
    for (int trial = 0; trial < 200; ++trial) {
        FiniteDomain a("A", gen::pick(rng, 1, 3));
        const int n_labels = gen::pick(rng, 1, 4);
        LabelSet labels(std::vector<std::string>(pool.begin(),
                                                 pool.begin() + n_labels));
        const int m = gen::pick(rng, 1, 3);
        std::vector<std::string> b;
        for (int i = 0; i < m; ++i)
            b.push_back(pool[static_cast<std::size_t>(
                gen::pick(rng, 0, n_labels - 1))]);
        const int family = gen::pick(rng, 1, 3);
        std::vector<std::vector<std::string>> bs;
        std::vector<Relation> rels;
        for (int j = 0; j < family; ++j) {
            const int nj = gen::pick(rng, 1, 3);
            std::vector<std::string> row;
            for (int i = 0; i < nj; ++i)
                row.push_back(pool[static_cast<std::size_t>(
                    gen::pick(rng, 0, n_labels - 1))]);
            bs.push_back(row);
            rels.push_back(gen::random_relation(rng, a, nj));
        }
        SuperpositionDecomposition d =
            superposition_decomposition(b, bs, labels, rels);
        CHECK(d.matches);
        CHECK(d.superposition == (d.tight & d.equality_pattern));
    }
}

TEST_CASE("image unions bound the consequents of satisfied constraints") {
    gen::Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FiniteFunction> fs;
        for (int i = 0; i < gen::pick(rng, 1, 3); ++i)
            fs.push_back(gen::random_function(rng, b2, b2, gen::pick(rng, 1, 2)));
        FunctionClass c(b2, b2, fs, 2);
        const int m = gen::pick(rng, 1, 2);
        Relation r = gen::random_relation(rng, b2, m);
        Relation bar = image_union(c, r);
        Relation s = bar | gen::random_relation(rng, b2, m);
        for (const FiniteFunction& f : c.members())
            REQUIRE(satisfies(f, Constraint(r, s)));
        CHECK(bar.subset_of(s));
        // and conversely a consequent missing part of the union is violated
        if (!bar.empty()) {
            std::vector<Tuple> fewer(bar.tuples().begin(),
                                     bar.tuples().end() - 1);
            Relation s2(m, b2, fewer);
            bool someone_violates = false;
            for (const FiniteFunction& f : c.members())
                if (!satisfies(f, Constraint(r, s2))) someone_violates = true;
            CHECK(someone_violates);
        }
    }
}

TEST_CASE("interpolation between antecedent and consequent, literally and "
          "simplified") {
    Relation delta = disequality_relation(b2);
    Relation eq = equality_relation(b2);
    std::vector<Relation> rels{delta, full_relation(b2, 2)};
    CHECK(has_interpolant(rels, delta, full_relation(b2, 2)));
    CHECK(has_interpolant(rels, Relation(2, b2, {Tuple({0, 1}, b2)}), delta));
    CHECK_FALSE(has_interpolant(rels, eq, eq));
    CHECK(has_interpolant({eq}, eq, full_relation(b2, 2)));
}
