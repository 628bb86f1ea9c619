#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqlat/continuum.hpp"
#include "eqlat/formula.hpp"

using namespace eqlat;

TEST_CASE("C_3 membership") {
    GammaRelation c3 = c_relation(3);
    CHECK(c3.rel.arity == 6);
    // the alternating tuple (x_i = 0, y_i = 1) always satisfies gamma_n
    CHECK(contains(c3.rel, std::vector<int>{0, 1, 0, 1, 0, 1}));
    // all-equal falsifies delta_3
    CHECK_FALSE(contains(c3.rel, std::vector<int>{5, 5, 5, 5, 5, 5}));
    // the Hubie output tuple falsifies delta_3
    CHECK_FALSE(contains(c3.rel, std::vector<int>{1, 1, 2, 2, 3, 3}));
    CHECK_THROWS_AS(c_relation(2), std::invalid_argument);
    CHECK_THROWS_AS(c_relation(6), std::invalid_argument);
}

TEST_CASE("C_n equals the formula evaluation of gamma_n (n = 3)") {
    // independent oracle: build gamma_3 as a parsed formula and evaluate
    // delta_3 over (x1,y1,x2,y2,x3,y3); kappa_A for A of size 2
    EqFormula g3 = parse_formula(
        "vars x1,y1,x2,y2,x3,y3; "
        "(x1!=y1 | x2!=y2 | x3!=y3)"
        " & (y1!=x2 | y2!=x1)"  // A={1,2}
        " & (y1!=x3 | y3!=x1)"  // A={1,3}
        " & (y2!=x3 | y3!=x2)"); // A={2,3}
    CHECK(c_relation(3).rel == formula_to_relation(g3, 6));
}

TEST_CASE("Hubie-violator construction (n = 3)") {
    HubieOperation h = hubie_operation(3);
    CHECK(h.n == 3);
    CHECK(h.m == 3348); // |C_3 ∩ {1..4}^6|, frozen from exhaustive enumeration
    CHECK(static_cast<int>(h.rows.size()) == h.m);
    CHECK(h.op.arity == h.m);
    // 6 constant rules plus the appended default fresh rule
    CHECK(h.op.rules.size() == 7);
    GammaRelation c3 = c_relation(3);
    // every stored row is in C_n, re-checked via contains
    for (const auto& row : h.rows) {
        CHECK(static_cast<int>(row.size()) == 6);
        CHECK(contains(c3.rel, row));
        for (int v : row) {
            CHECK(v >= 1);
            CHECK(v <= 4);
        }
    }
    // lexicographic enumeration
    CHECK(std::is_sorted(h.rows.begin(), h.rows.end()));
    CHECK_THROWS_AS(hubie_operation(5), std::invalid_argument);
}

TEST_CASE("H_n violates C_n exactly (n = 3)") {
    HubieViolation v = hubie_violation_check(3);
    CHECK(v.ok);
    CHECK(v.witness.output == std::vector<int>{1, 1, 2, 2, 3, 3});
    CHECK(v.witness.output_pattern == pattern_of(std::vector<int>{1, 1, 2, 2, 3, 3}));
    // the witness replays through the generic verifier
    HubieOperation h = hubie_operation(3);
    CHECK(verify_witness(h.op, c_relation(3).rel, v.witness));
}

TEST_CASE("H_3 against C_4: sampling finds no counterexample (reduced run)") {
    HubieOperation h3 = hubie_operation(3);
    GammaRelation c4 = c_relation(4);
    CHECK(c4.rel.arity == 8);
    SampledVerdict v = preserves_sampled(h3.op, c4.rel, 2000, 42, 16);
    CHECK_FALSE(v.counterexample_found);
    CHECK(v.seed == 42);
}

TEST_CASE("antichain demo") {
    AntichainReport rep = antichain_demo({3}, {4}, 500, 42);
    REQUIRE(rep.entries.size() == 2);
    for (const auto& e : rep.entries) {
        CHECK(e.violation.ok);
        REQUIRE(e.cross.size() == 1);
        CHECK_FALSE(e.cross[0].counterexample_found);
        CHECK(e.cross[0].samples == 500);
        CHECK(e.cross[0].seed == 42);
    }
    CHECK(rep.entries[0].m == 3348);
    CHECK(rep.entries[1].m == 300300); // |C_4 ∩ {1..5}^8|, frozen
    CHECK_THROWS_AS(antichain_demo({3}, {3}), std::invalid_argument);
    CHECK_THROWS_AS(antichain_demo({2}, {3}), std::invalid_argument);
}
