#ifndef eqlat_csp_hpp
#define eqlat_csp_hpp

// Constraint satisfaction over equality languages: certified polynomial
// algorithms for the two tractable reasons (a constant polymorphism, or the
// binary injections with Horn definitions and union-find propagation), plus
// a brute-force partition-search oracle for cross-checking and for
// NP-complete languages at toy scale.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "classify.hpp"
#include "formula.hpp"
#include "pp.hpp"

namespace eqlat {

struct CspConstraint {
    std::string relation;
    std::vector<std::string> args;
};

struct CspInstance {
    std::vector<std::string> variables;
    std::vector<CspConstraint> constraints;
};

struct Solution {
    bool sat = false;
    std::map<std::string, int> assignment; // values 0..(classes-1) when sat
};

namespace detail {

inline std::map<std::string, int> variable_index(const CspInstance& inst) {
    std::map<std::string, int> idx;
    for (const auto& v : inst.variables)
        if (!idx.emplace(v, static_cast<int>(idx.size())).second)
            throw std::invalid_argument("csp: duplicate variable " + v);
    return idx;
}

inline const OrbitRelation& resolve(const RelationEnv& env, const CspConstraint& c) {
    auto it = env.find(c.relation);
    if (it == env.end())
        throw std::invalid_argument("csp: unresolved relation " + c.relation);
    if (static_cast<int>(c.args.size()) != it->second.arity)
        throw std::invalid_argument("csp: arity mismatch for " + c.relation);
    return it->second;
}

// simple union-find over variable indices
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

} // namespace detail

inline void validate_instance(const CspInstance& inst, const RelationEnv& env) {
    auto idx = detail::variable_index(inst);
    for (const auto& c : inst.constraints) {
        detail::resolve(env, c);
        for (const auto& a : c.args)
            if (!idx.count(a))
                throw std::invalid_argument("csp: undeclared variable " + a + " in " + c.relation);
    }
}

inline bool verify_solution(const CspInstance& inst, const RelationEnv& env,
                            const std::map<std::string, int>& assignment) {
    for (const auto& c : inst.constraints) {
        const OrbitRelation& rel = detail::resolve(env, c);
        std::vector<int> tuple;
        for (const auto& a : c.args) {
            auto it = assignment.find(a);
            if (it == assignment.end()) return false;
            tuple.push_back(it->second);
        }
        if (!contains(rel, tuple)) return false;
    }
    return true;
}

// Oracle: try every partition of the variable set (values = block ids).
inline Solution brute_solve(const CspInstance& inst, const RelationEnv& env) {
    validate_instance(inst, env);
    int n = static_cast<int>(inst.variables.size());
    if (n > 8) throw std::invalid_argument("brute_solve: more than 8 variables");
    if (n == 0) return {inst.constraints.empty(), {}};
    for (const auto& p : enumerate_partitions(n, std::max(n, kDefaultPartitionCap))) {
        std::map<std::string, int> assignment;
        for (int i = 0; i < n; ++i)
            assignment[inst.variables[static_cast<std::size_t>(i)]] =
                p[static_cast<std::size_t>(i)];
        if (verify_solution(inst, env, assignment)) return {true, std::move(assignment)};
    }
    return {false, {}};
}

// Certified solver.  Constant case: the all-equal assignment works, since a
// constant polymorphism puts the all-equal orbit in every relation of the
// language.  Binary-injection case: every relation has a Horn definition
// (its reduced CNF); run union-find propagation to a fixpoint — whenever a
// clause has all its inequality atoms forced (both sides merged), merge the
// sides of its positive atom, or fail if the clause has no positive atom —
// then assign distinct values per class.  Either way the result is verified
// against every constraint before returning.
inline Solution solve(const CspInstance& inst, const RelationEnv& env, const CspVerdict& cert,
                      int cap = kDefaultPartitionCap) {
    validate_instance(inst, env);
    if (!cert.polynomial)
        throw std::invalid_argument("solve: certificate does not claim tractability");

    if (cert.reason == "constant") {
        std::map<std::string, int> assignment;
        for (const auto& v : inst.variables) assignment[v] = 0;
        if (!verify_solution(inst, env, assignment))
            throw std::logic_error("solve: constant certificate does not match the language");
        return {true, std::move(assignment)};
    }
    if (cert.reason != "binary_injection")
        throw std::invalid_argument("solve: unknown certificate reason " + cert.reason);

    auto idx = detail::variable_index(inst);
    int n = static_cast<int>(inst.variables.size());
    detail::UnionFind uf(n);

    // instantiate the Horn definition of each constraint over instance
    // variables
    struct GroundClause {
        std::vector<std::pair<int, int>> body; // inequality atoms
        bool has_head = false;
        std::pair<int, int> head{-1, -1}; // equality atom
    };
    std::vector<GroundClause> clauses;
    std::map<std::string, CnfFormula> defs;
    for (const auto& c : inst.constraints) {
        const OrbitRelation& rel = detail::resolve(env, c);
        auto it = defs.find(c.relation);
        if (it == defs.end())
            it = defs.emplace(c.relation, reduce(relation_to_cnf(rel, cap), cap)).first;
        for (const Clause& cl : it->second.clauses) {
            GroundClause g;
            bool ok = true;
            for (const Literal& l : cl) {
                if (l.is_false_atom()) continue; // never satisfiable
                int a = idx.at(c.args[static_cast<std::size_t>(l.a)]);
                int b = idx.at(c.args[static_cast<std::size_t>(l.b)]);
                if (l.positive) {
                    if (g.has_head)
                        throw std::invalid_argument(
                            "solve: definition of " + c.relation +
                            " is not Horn; certificate does not match the language");
                    g.has_head = true;
                    g.head = {a, b};
                } else {
                    if (a == b) { // x != x: satisfiable never, drop the atom
                        continue;
                    }
                    g.body.push_back({a, b});
                }
            }
            (void)ok;
            clauses.push_back(std::move(g));
        }
    }

    // fixpoint propagation
    bool changed = true, contradiction = false;
    while (changed && !contradiction) {
        changed = false;
        for (const auto& g : clauses) {
            if (g.has_head && uf.find(g.head.first) == uf.find(g.head.second)) continue;
            bool fires = true;
            for (const auto& [a, b] : g.body)
                if (uf.find(a) != uf.find(b)) {
                    fires = false;
                    break;
                }
            if (!fires) continue;
            if (!g.has_head) {
                contradiction = true;
                break;
            }
            changed = uf.merge(g.head.first, g.head.second) || changed;
        }
    }
    if (contradiction) return {false, {}};

    // distinct value per union-find class
    std::map<int, int> class_value;
    std::map<std::string, int> assignment;
    for (int i = 0; i < n; ++i) {
        int root = uf.find(i);
        auto it = class_value.find(root);
        if (it == class_value.end())
            it = class_value.emplace(root, static_cast<int>(class_value.size())).first;
        assignment[inst.variables[static_cast<std::size_t>(i)]] = it->second;
    }
    if (!verify_solution(inst, env, assignment)) return {false, {}};
    return {true, std::move(assignment)};
}

} // namespace eqlat

#endif
