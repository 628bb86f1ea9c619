#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eqlat/csp.hpp"

using namespace eqlat;

namespace {

RelationEnv base_env() {
    return RelationEnv{{"neq", builtin_relation("neq")},
                       {"I", builtin_relation("I")},
                       {"odd3", builtin_relation("odd3")},
                       {"Ru2", builtin_relation("Runder", 2)}};
}

CspInstance random_instance(const std::vector<std::pair<std::string, int>>& rels, int max_vars,
                            int max_cons, std::mt19937_64& rng) {
    CspInstance inst;
    int nv = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vars - 1));
    for (int v = 0; v < nv; ++v) inst.variables.push_back("v" + std::to_string(v));
    int nc = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_cons));
    for (int c = 0; c < nc; ++c) {
        const auto& [name, arity] = rels[rng() % rels.size()];
        CspConstraint con;
        con.relation = name;
        for (int a = 0; a < arity; ++a)
            con.args.push_back(inst.variables[rng() % static_cast<std::uint64_t>(nv)]);
        inst.constraints.push_back(std::move(con));
    }
    return inst;
}

} // namespace

TEST_CASE("validation") {
    RelationEnv env = base_env();
    CspInstance bad_rel{{"x", "y"}, {{"ghost", {"x", "y"}}}};
    CHECK_THROWS_AS(validate_instance(bad_rel, env), std::invalid_argument);
    CspInstance bad_arity{{"x", "y"}, {{"neq", {"x", "y", "y"}}}};
    CHECK_THROWS_AS(validate_instance(bad_arity, env), std::invalid_argument);
    CspInstance bad_var{{"x"}, {{"neq", {"x", "zz"}}}};
    CHECK_THROWS_AS(validate_instance(bad_var, env), std::invalid_argument);
    CspInstance dup{{"x", "x"}, {}};
    CHECK_THROWS_AS(validate_instance(dup, env), std::invalid_argument);
}

TEST_CASE("brute_solve basics") {
    RelationEnv env = base_env();
    CHECK(brute_solve(CspInstance{{}, {}}, env).sat);
    CHECK_FALSE(brute_solve(CspInstance{{"x"}, {{"neq", {"x", "x"}}}}, env).sat);
    Solution tri = brute_solve(
        CspInstance{{"x", "y", "z"},
                    {{"neq", {"x", "y"}}, {"neq", {"y", "z"}}, {"neq", {"x", "z"}}}},
        env);
    REQUIRE(tri.sat);
    CHECK(verify_solution(CspInstance{{"x", "y", "z"},
                                      {{"neq", {"x", "y"}}, {"neq", {"y", "z"}},
                                       {"neq", {"x", "z"}}}},
                          env, tri.assignment));
    CspInstance big{{"a", "b", "c", "d", "e", "f", "g", "h", "i"}, {}};
    CHECK_THROWS_AS(brute_solve(big, env), std::invalid_argument);
}

TEST_CASE("the Horn propagation solver on the worked examples") {
    RelationEnv env = base_env();
    CspVerdict cert{true, "binary_injection"};
    // I(a,a,c,d) forces c = d; neq(c,d) contradicts
    CspInstance forced{{"a", "c", "d"}, {{"I", {"a", "a", "c", "d"}}, {"neq", {"c", "d"}}}};
    CHECK_FALSE(solve(forced, env, cert).sat);
    // without the disequality it is satisfiable
    CspInstance fine{{"a", "c", "d"}, {{"I", {"a", "a", "c", "d"}}}};
    Solution s = solve(fine, env, cert);
    REQUIRE(s.sat);
    CHECK(s.assignment.at("c") == s.assignment.at("d"));
    CHECK(verify_solution(fine, env, s.assignment));
}

TEST_CASE("solve values are 0..classes-1") {
    RelationEnv env = base_env();
    CspVerdict cert{true, "binary_injection"};
    CspInstance inst{{"x", "y", "z"}, {{"neq", {"x", "y"}}}};
    Solution s = solve(inst, env, cert);
    REQUIRE(s.sat);
    std::set<int> values;
    for (const auto& [v, x] : s.assignment) {
        CHECK(x >= 0);
        CHECK(x < 3);
        values.insert(x);
    }
    CHECK(static_cast<int>(values.size()) == 3); // nothing merged here
}

TEST_CASE("certificate handling") {
    RelationEnv env = base_env();
    CspInstance inst{{"x"}, {}};
    CHECK_THROWS_AS(solve(inst, env, CspVerdict{false, ""}), std::invalid_argument);
    CHECK_THROWS_AS(solve(inst, env, CspVerdict{true, "mystery"}), std::invalid_argument);
    // constant certificate: all-equal assignment
    RelationEnv cenv{{"or2", formula_to_relation(parse_formula("x = y | y = z"), 3)}};
    CspInstance cinst{{"a", "b", "c"}, {{"or2", {"a", "b", "c"}}}};
    Solution s = solve(cinst, cenv, CspVerdict{true, "constant"});
    REQUIRE(s.sat);
    for (const auto& [v, x] : s.assignment) CHECK(x == 0);
}

TEST_CASE("solve agrees with brute_solve on random instances") {
    RelationEnv env = base_env();
    CspVerdict cert{true, "binary_injection"};
    std::mt19937_64 rng(1234);
    std::vector<std::pair<std::string, int>> shapes{
        {"neq", 2}, {"I", 4}, {"odd3", 3}, {"Ru2", 4}};
    int sat_count = 0, unsat_count = 0;
    for (int t = 0; t < 400; ++t) {
        CspInstance inst = random_instance(shapes, 6, 5, rng);
        Solution fast = solve(inst, env, cert);
        Solution brute = brute_solve(inst, env);
        REQUIRE(fast.sat == brute.sat);
        if (fast.sat) {
            ++sat_count;
            CHECK(verify_solution(inst, env, fast.assignment));
        } else
            ++unsat_count;
    }
    // the corpus must exercise both outcomes
    CHECK(sat_count > 20);
    CHECK(unsat_count > 20);
}

TEST_CASE("monotonicity: adding a constraint never turns Unsat into Sat") {
    RelationEnv env = base_env();
    CspVerdict cert{true, "binary_injection"};
    std::mt19937_64 rng(77);
    std::vector<std::pair<std::string, int>> shapes{{"neq", 2}, {"odd3", 3}};
    for (int t = 0; t < 100; ++t) {
        CspInstance inst = random_instance(shapes, 5, 6, rng);
        bool seen_unsat = false;
        for (std::size_t k = 1; k <= inst.constraints.size(); ++k) {
            CspInstance prefix{inst.variables,
                               {inst.constraints.begin(),
                                inst.constraints.begin() + static_cast<long>(k)}};
            bool sat = solve(prefix, env, cert).sat;
            if (seen_unsat) CHECK_FALSE(sat);
            if (!sat) seen_unsat = true;
        }
    }
}
