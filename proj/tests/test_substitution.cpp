#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "relcon/relcon.hpp"

using namespace relcon;

namespace {
const FiniteDomain b2("A", 2);
const FiniteFunction and2(2, b2, b2, {0, 0, 0, 1});
const FiniteFunction id1(1, b2, b2, {0, 1});
const FiniteFunction not1(1, b2, b2, {1, 0});

FunctionClass boolean_class(std::vector<FiniteFunction> fs, int bound = 2) {
    return FunctionClass(b2, b2, std::move(fs), bound);
}
} // namespace

TEST_CASE("substitution covers identification, cylindrification and "
          "permutation") {
    CHECK(substitute(and2, IndexMap(2, 1, {0, 0})) == id1); // x and x = x
    CHECK(substitute(id1, IndexMap(1, 2, {0})) == projection(b2, 2, 0));
    FiniteFunction implies(2, b2, b2, {1, 1, 0, 1});
    FiniteFunction transposed = substitute(implies, IndexMap(2, 2, {1, 0}));
    CHECK(transposed.table() == std::vector<int>{1, 0, 1, 1});
    CHECK_THROWS_AS(IndexMap(2, 1, {0, 1}), mismatch_error);
}

TEST_CASE("the substitution closure of AND at bound 2") {
    FunctionClass closed = svs_closure(boolean_class({and2}), 2);
    CHECK(closed.size() == 4);
    CHECK(closed.contains(id1));
    CHECK(closed.contains(projection(b2, 2, 0)));
    CHECK(closed.contains(projection(b2, 2, 1)));
    CHECK(closed.contains(and2));
}

TEST_CASE("projections are substitution-closed and the empty class is fixed") {
    FunctionClass projections = boolean_class(
        {id1, projection(b2, 2, 0), projection(b2, 2, 1)});
    CHECK(svs_closure(projections, 2) == projections);
    CHECK(is_substitution_closed(projections));
    FunctionClass empty = boolean_class({});
    CHECK(svs_closure(empty, 2).empty());
}

TEST_CASE("members above the bound are kept but only lowered, never raised") {
    // ternary majority with target bound 2
    std::vector<int> table;
    for (const Tuple& t : all_tuples(b2, 3))
        table.push_back((t(0) + t(1) + t(2)) >= 2 ? 1 : 0);
    FiniteFunction maj(3, b2, b2, table);
    FunctionClass closed = svs_closure(boolean_class({maj}, 3), 2);
    CHECK(closed.contains(maj));
    CHECK(closed.contains(id1)); // maj(x,x,y) = x identifications land at <= 2
    for (const FiniteFunction& f : closed.members())
        CHECK((f.arity() <= 2 || f == maj));
    // a closure that could raise the arity reaches 3-ary cylindrifications
    FunctionClass wide = svs_closure(boolean_class({and2}), 3);
    CHECK(wide.members_of_arity(3).size() > 0);
}

TEST_CASE("svs_closure is a closure operator") {
    gen::Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<FiniteFunction> fs;
        const int count = gen::pick(rng, 0, 3);
        for (int i = 0; i < count; ++i)
            fs.push_back(gen::random_function(rng, b2, b2, gen::pick(rng, 1, 2)));
        FunctionClass k = boolean_class(fs);
        FunctionClass closed = svs_closure(k, 2);
        // extensive
        for (const FiniteFunction& f : k.members()) CHECK(closed.contains(f));
        // idempotent
        CHECK(svs_closure(closed, 2) == closed);
        // monotone
        if (!k.empty()) {
            std::vector<FiniteFunction> fewer(k.members().begin(),
                                              k.members().end() - 1);
            FunctionClass smaller_closed = svs_closure(boolean_class(fewer), 2);
            for (const FiniteFunction& f : smaller_closed.members())
                CHECK(closed.contains(f));
        }
    }
}

TEST_CASE("satisfaction transfers to substituted functions") {
    gen::Rng rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        FiniteDomain a("A", gen::pick(rng, 2, 3));
        FiniteDomain b("B", gen::pick(rng, 2, 3));
        const int n = gen::pick(rng, 1, 2);
        FiniteFunction f = gen::random_function(rng, a, b, n);
        const int m = gen::pick(rng, 1, 2);
        Relation r = gen::random_relation(rng, a, m);
        Constraint c(r, image_of_relation(f, r));
        REQUIRE(satisfies(f, c));
        const int target = gen::pick(rng, 1, 2);
        std::vector<int> images;
        for (int i = 0; i < n; ++i) images.push_back(gen::pick(rng, 0, target - 1));
        CHECK(satisfies(substitute(f, IndexMap(n, target, images)), c));
    }
}

TEST_CASE("local closure of function classes is the identity on finite "
          "domains") {
    CHECK(local_closure_functions(boolean_class({and2})) ==
          boolean_class({and2}));
    FunctionClass unary = boolean_class({id1, not1}, 1);
    CHECK(local_closure_functions(unary) == unary);
    CHECK(local_closure_functions(boolean_class({})).empty());

    gen::Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<FiniteFunction> fs;
        const int count = gen::pick(rng, 0, 4);
        for (int i = 0; i < count; ++i)
            fs.push_back(gen::random_function(rng, b2, b2, gen::pick(rng, 1, 2)));
        FunctionClass k = boolean_class(fs);
        CHECK(local_closure_functions(k) == k);
    }
}
