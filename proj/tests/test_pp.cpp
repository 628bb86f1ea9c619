#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqlat/pp.hpp"

using namespace eqlat;

namespace {

RelationEnv base_env() {
    return RelationEnv{{"neq", builtin_relation("neq")},
                       {"I", builtin_relation("I")},
                       {"N", builtin_relation("N")},
                       {"odd3", builtin_relation("odd3")},
                       {"R2", builtin_relation("R", 2)},
                       {"R3", builtin_relation("R", 3)},
                       {"Ru2", builtin_relation("Runder", 2)}};
}

} // namespace

TEST_CASE("pp parsing") {
    PpFormula f = parse_pp_formula("exists u,v: R2(x,y,u,v) & u != v");
    CHECK(f.free_variables == std::vector<std::string>{"x", "y"});
    CHECK(f.bound_variables == std::vector<std::string>{"u", "v"});
    CHECK(f.conjuncts.size() == 2);
    CHECK(f.conjuncts[0].kind == PpAtom::Kind::Base);
    CHECK(f.conjuncts[1].kind == PpAtom::Kind::Neq);

    PpFormula g = parse_pp_formula("vars a,b; a = b");
    CHECK(g.free_variables == std::vector<std::string>{"a", "b"});
    CHECK(g.bound_variables.empty());
}

TEST_CASE("pp evaluation basics") {
    RelationEnv env = base_env();
    // an existential witness can always take a fresh value
    OrbitRelation r = pp_evaluate(parse_pp_formula("exists u: x != u & u != y"), env);
    CHECK(r.arity == 2);
    CHECK(r.orbits.size() == 2); // full binary relation

    // neq as a projection of N
    OrbitRelation proj = pp_evaluate(parse_pp_formula("exists c,d: N(x,y,c,d) & x != y"), env);
    CHECK(proj == env.at("neq"));

    // equality forces merging
    OrbitRelation eq = pp_evaluate(parse_pp_formula("vars x,y; x = y"), env);
    CHECK(eq.orbits == std::set<Partition>{Partition{0, 0}});
}

TEST_CASE("unresolved relation names fail") {
    CHECK_THROWS_AS(pp_evaluate(parse_pp_formula("ghost(x,y)"), RelationEnv{}),
                    std::invalid_argument);
}

TEST_CASE("the Horn-clause pp definition over I (two premises)") {
    RelationEnv env = base_env();
    // (u1=v1 & u2=v2) -> u=v, defined from I with three chained witnesses
    PpFormula pp = parse_pp_formula(
        "vars u1,v1,u2,v2,u,v; exists w1,w2,w3: "
        "I(w1,w3,u,v) & I(u1,v1,w1,w2) & I(u2,v2,w2,w3)");
    OrbitRelation got = pp_evaluate(pp, env);
    EqFormula expect = parse_formula("vars u1,v1,u2,v2,u,v; u1!=v1 | u2!=v2 | u=v");
    CHECK(got == formula_to_relation(expect, 6));
}

TEST_CASE("I from N") {
    RelationEnv env = base_env();
    PpFormula pp = parse_pp_formula(
        "vars a,b,c,d; exists u,v,w: N(a,b,u,v) & N(a,b,v,w) & N(u,w,c,d)");
    CHECK(pp_evaluate(pp, env) == env.at("I"));
}

TEST_CASE("underline R_2 from ODD_3 (six conjuncts)") {
    RelationEnv env = base_env();
    PpFormula pp = parse_pp_formula(
        "vars x1,x2,x3,x4; exists y1,y2,y3,y4,y5: "
        "odd3(x1,x2,y1) & odd3(x1,x2,y2) & odd3(y1,y2,y3) & "
        "odd3(y3,y4,y5) & odd3(x3,x4,y4) & odd3(x3,x4,y5)");
    CHECK(pp_evaluate(pp, env) == env.at("Ru2"));
}

TEST_CASE("R_2 from R_3 by gluing") {
    RelationEnv env = base_env();
    PpFormula pp = parse_pp_formula(
        "vars x1,y1,x2,y2; exists u,v: u = v & R3(x1,y1,x2,y2,u,v)");
    CHECK(pp_evaluate(pp, env) == env.at("R2"));
}

TEST_CASE("bounded search returns verified certificates") {
    RelationEnv env{{"N", builtin_relation("N")}};
    auto found = pp_search_bounded(builtin_relation("neq"), env, PpSearchLimits{2, 2, 1'000'000});
    REQUIRE(found.has_value());
    CHECK(pp_evaluate(*found, env) == builtin_relation("neq"));

    RelationEnv env3{{"R3", builtin_relation("R", 3)}};
    auto glue = pp_search_bounded(builtin_relation("R", 2), env3, PpSearchLimits{2, 2, 2'000'000});
    REQUIRE(glue.has_value());
    CHECK(pp_evaluate(*glue, env3) == builtin_relation("R", 2));

    // too-small limits: best effort, no certificate
    RelationEnv envr{{"Ru2", builtin_relation("Runder", 2)}};
    auto none = pp_search_bounded(builtin_relation("odd3"), envr, PpSearchLimits{0, 2, 100'000});
    CHECK_FALSE(none.has_value());
}
