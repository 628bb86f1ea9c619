#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqlat/lang.hpp"

using namespace eqlat;

TEST_CASE("language files: relations") {
    LanguageFile lf = parse_language(
        "# comment\n"
        "rel neq  = builtin neq\n"
        "rel R2   = builtin Runder(2)\n"
        "rel link = formula x1 != x2 | x2 = x3\n"
        "rel tri  = orbits [1,1,1] [1,2,3]\n");
    CHECK(lf.relation_order == std::vector<std::string>{"neq", "R2", "link", "tri"});
    CHECK(lf.relations.at("neq") == builtin_relation("neq"));
    CHECK(lf.relations.at("R2") == builtin_relation("Runder", 2));
    CHECK(lf.relations.at("link") ==
          formula_to_relation(parse_formula("x1 != x2 | x2 = x3"), 3));
    CHECK(lf.relations.at("tri").orbits ==
          std::set<Partition>{Partition{0, 0, 0}, Partition{0, 1, 2}});
}

TEST_CASE("language files: operations") {
    LanguageFile lf = parse_language(
        "op f3   = builtin f3\n"
        "op b2   = builtin bar(2)\n"
        "op pick = rules arity 2\n"
        "  in(0), any -> const(0)\n"
        "  any, notin(1) -> fresh(0; 0)\n"
        "end\n");
    CHECK(lf.operation_order == std::vector<std::string>{"f3", "b2", "pick"});
    CHECK(lf.operations.at("f3").arity == 3);
    CHECK(lf.operations.at("b2").arity == 2);
    const PatternOperation& pick = lf.operations.at("pick");
    CHECK(pick.arity == 2);
    CHECK(pick.rules.size() == 3); // a default rule is appended
    CHECK(pick.default_appended);
    auto out = apply_concrete(pick, {{0, 5}, {9, 9}});
    CHECK(out[0].const_value == 0);
    CHECK(out[1].kind == OutputTerm::Kind::FreshVal);
}

TEST_CASE("language files: errors") {
    CHECK_THROWS_AS(parse_language("rel x = builtin nope\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_language("rel a = builtin neq\nrel a = builtin neq\n"), parse_error);
    CHECK_THROWS_AS(parse_language("wat a = builtin neq\n"), parse_error);
    CHECK_THROWS_AS(parse_language("rel a = orbits\n"), parse_error);
    CHECK_THROWS_AS(parse_language("rel a = orbits [2,1]\n"), parse_error);
    CHECK_THROWS_AS(parse_language("op a = rules arity 2\n  any -> const(0)\nend\n"),
                    parse_error);
}

TEST_CASE("instance files") {
    InstanceFile f = parse_instance(
        "# header comment\n"
        "instance over mixed.lang {\n"
        "  vars x, y, z;\n"
        "  R2(x, y, x, z);\n"
        "  neq(x, y);\n"
        "}\n");
    CHECK(f.language_path == "mixed.lang");
    CHECK(f.instance.variables == std::vector<std::string>{"x", "y", "z"});
    REQUIRE(f.instance.constraints.size() == 2);
    CHECK(f.instance.constraints[0].relation == "R2");
    CHECK(f.instance.constraints[0].args ==
          std::vector<std::string>{"x", "y", "x", "z"});
    CHECK(f.instance.constraints[1].relation == "neq");

    CHECK_THROWS_AS(parse_instance("nonsense"), parse_error);
    CHECK_THROWS_AS(parse_instance("instance over x.lang vars a;"), parse_error);
}

TEST_CASE("the shipped samples load and solve") {
    LanguageFile mixed = load_language("samples/mixed.lang");
    CHECK(mixed.relations.count("neq"));
    CHECK(mixed.relations.count("I"));
    CHECK(mixed.operations.count("f3"));

    InstanceFile tri = load_instance("samples/triangle.csp");
    CHECK(brute_solve(tri.instance, mixed.relations).sat);

    InstanceFile forced = load_instance("samples/forced.csp");
    CHECK_FALSE(brute_solve(forced.instance, mixed.relations).sat);
}
