// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion is self-contained and uses frozen seeds so the
// run is reproducible.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "eqlat/classify.hpp"
#include "eqlat/continuum.hpp"
#include "eqlat/csp.hpp"
#include "eqlat/pp.hpp"

using namespace eqlat;

namespace {

// Shared corpus: all 32 arity-3 orbit subsets plus 500 seeded random arity-4
// relations (each of the 15 arity-4 partitions kept with probability 1/2).
std::vector<OrbitRelation> corpus() {
    std::vector<OrbitRelation> out;
    std::vector<Partition> p3 = enumerate_partitions(3);
    for (unsigned mask = 0; mask < (1u << p3.size()); ++mask) {
        std::set<Partition> orbits;
        for (std::size_t i = 0; i < p3.size(); ++i)
            if (mask & (1u << i)) orbits.insert(p3[i]);
        out.emplace_back(3, std::move(orbits));
    }
    std::vector<Partition> p4 = enumerate_partitions(4);
    std::mt19937_64 rng(20240615);
    for (int t = 0; t < 500; ++t) {
        std::set<Partition> orbits;
        for (const auto& p : p4)
            if (rng() & 1) orbits.insert(p);
        out.emplace_back(4, std::move(orbits));
    }
    return out;
}

bool criterion1() {
    PatternOperation binj = op_generic_injection(2);
    for (const auto& rel : corpus()) {
        bool preserves = preserves_exact(binj, rel).preserves;
        bool horn = classify_formula(reduce(relation_to_cnf(rel))).horn;
        if (preserves != horn) return false;
    }
    return true;
}

bool criterion2() {
    PatternOperation binj = op_generic_injection(2);
    PatternOperation rich = op_richard();
    for (const auto& rel : corpus()) {
        bool preserves =
            preserves_exact(rich, rel).preserves && preserves_exact(binj, rel).preserves;
        bool negative = classify_formula(reduce(relation_to_cnf(rel))).negative;
        if (preserves != negative) return false;
    }
    return true;
}

bool criterion3() {
    // f_3 violates Rneq(3) with the canonical witness pattern
    PreservationVerdict v = preserves_exact(op_fk(3), builtin_relation("Rneq", 3));
    if (v.preserves || !v.witness) return false;
    if (v.witness->output_pattern != Partition{0, 0, 1, 1, 2, 2}) return false;
    if (!verify_witness(op_fk(3), builtin_relation("Rneq", 3), *v.witness)) return false;
    for (int k : {3, 4}) {
        // f_k violates underline R_k with output pattern (1,1,...,k,k)
        OrbitRelation rk = builtin_relation("Runder", k);
        PreservationVerdict bad = preserves_exact(op_fk(k), rk);
        if (bad.preserves || !bad.witness) return false;
        Partition expect;
        for (int i = 0; i < k; ++i) {
            expect.push_back(i);
            expect.push_back(i);
        }
        if (bad.witness->output_pattern != expect) return false;
        if (!verify_witness(op_fk(k), rk, *bad.witness)) return false;
        // ... but preserves underline R_{k-1}
        if (k >= 3 && !preserves_exact(op_fk(k), builtin_relation("Runder", k - 1)).preserves)
            return false;
    }
    return true;
}

bool criterion4() {
    RelationEnv env{{"neq", builtin_relation("neq")}, {"I", builtin_relation("I")},
                    {"N", builtin_relation("N")},     {"odd3", builtin_relation("odd3")},
                    {"R2", builtin_relation("R", 2)}, {"R3", builtin_relation("R", 3)},
                    {"Ru2", builtin_relation("Runder", 2)}};
    // two-premise Horn clause from I
    PpFormula horn = parse_pp_formula(
        "vars u1,v1,u2,v2,u,v; exists w1,w2,w3: "
        "I(w1,w3,u,v) & I(u1,v1,w1,w2) & I(u2,v2,w2,w3)");
    EqFormula horn_expect = parse_formula("vars u1,v1,u2,v2,u,v; u1!=v1 | u2!=v2 | u=v");
    if (pp_evaluate(horn, env) != formula_to_relation(horn_expect, 6)) return false;
    // I from N
    PpFormula i_from_n = parse_pp_formula(
        "vars a,b,c,d; exists u,v,w: N(a,b,u,v) & N(a,b,v,w) & N(u,w,c,d)");
    if (pp_evaluate(i_from_n, env) != env.at("I")) return false;
    // underline R_2 from ODD_3
    PpFormula r2_from_odd = parse_pp_formula(
        "vars x1,x2,x3,x4; exists y1,y2,y3,y4,y5: "
        "odd3(x1,x2,y1) & odd3(x1,x2,y2) & odd3(y1,y2,y3) & "
        "odd3(y3,y4,y5) & odd3(x3,x4,y4) & odd3(x3,x4,y5)");
    if (pp_evaluate(r2_from_odd, env) != env.at("Ru2")) return false;
    // R_2 from R_3 by gluing the last pair
    PpFormula glue = parse_pp_formula("vars x1,y1,x2,y2; exists u,v: u = v & R3(x1,y1,x2,y2,u,v)");
    return pp_evaluate(glue, env) == env.at("R2");
}

bool criterion5() {
    // exact violations (rows are re-checked against C_n inside)
    HubieViolation v3 = hubie_violation_check(3);
    HubieViolation v4 = hubie_violation_check(4);
    if (!v3.ok || !v4.ok) return false;
    // cross-preservation: sampling finds no counterexample at 10^4 samples
    HubieOperation h3 = hubie_operation(3);
    SampledVerdict s34 = preserves_sampled(h3.op, c_relation(4).rel, 10'000, 42, 16);
    if (s34.counterexample_found) return false;
    HubieOperation h4 = hubie_operation(4);
    SampledVerdict s43 = preserves_sampled(h4.op, c_relation(3).rel, 10'000, 42, 12);
    return !s43.counterexample_found;
}

bool seq_leq_brute(const KernelTuple& a, const KernelTuple& b) {
    std::size_t k = a.size(), n = b.size();
    if (k > n) return false;
    std::vector<int> group(n, 0);
    auto sums_ok = [&]() {
        for (std::size_t i = 0; i < k; ++i) {
            long long sum = 0;
            bool has_omega = false, nonempty = false;
            for (std::size_t j = 0; j < n; ++j)
                if (group[j] == static_cast<int>(i) + 1) {
                    nonempty = true;
                    if (b[j] == kOmega)
                        has_omega = true;
                    else
                        sum += b[j];
                }
            if (!nonempty) return false;
            if (a[i] == kOmega) {
                if (!has_omega) return false;
            } else if (!has_omega && sum < a[i])
                return false;
        }
        return true;
    };
    for (;;) {
        if (sums_ok()) return true;
        std::size_t pos = 0;
        while (pos < n && group[pos] == static_cast<int>(k)) group[pos++] = 0;
        if (pos == n) return false;
        ++group[pos];
    }
}

bool criterion6() {
    // all nondecreasing tuples of length <= 4 over {1..4, omega}
    std::vector<KernelTuple> tuples;
    std::vector<int> entries{1, 2, 3, 4, kOmega};
    auto rec = [&](auto&& self, KernelTuple& cur, std::size_t from) -> void {
        if (!cur.empty()) tuples.push_back(cur);
        if (cur.size() == 4) return;
        for (std::size_t i = from; i < entries.size(); ++i) {
            cur.push_back(entries[i]);
            self(self, cur, i);
            cur.pop_back();
        }
    };
    KernelTuple cur;
    rec(rec, cur, 0);
    for (const auto& a : tuples)
        for (const auto& b : tuples) {
            if (seq_leq(a, b) != seq_leq_brute(a, b)) return false;
            if (a.size() == b.size()) {
                bool cw = true;
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (!detail::omega_leq(a[i], b[i])) cw = false;
                if (seq_leq(a, b) != cw) return false;
            }
        }
    if (!monoid_of_relation(builtin_relation("neq")).is_I()) return false;
    if (!monoid_of_relation(builtin_relation("odd3")).is_Iplus()) return false;
    OrbitRelation two_eq(3, {Partition{0, 0, 0}, Partition{0, 0, 1}, Partition{0, 1, 0},
                             Partition{0, 1, 1}});
    return monoid_of_relation(two_eq).top;
}

bool criterion7() {
    ClonePosition n =
        classify_language({builtin_relation("N"), builtin_relation("neq")});
    if (!(n.kind == IntervalKind::II && n.flags.above_H && !n.flags.above_B &&
          !n.flags.inside_S && !n.flags.above_R))
        return false;
    ClonePosition s =
        classify_language({builtin_relation("Runder", 2), builtin_relation("neq")});
    if (!(s.kind == IntervalKind::II && s.flags.above_H && s.flags.above_B &&
          s.flags.inside_S && !s.flags.above_R))
        return false;
    ClonePosition r = classify_language({builtin_relation("Rneq", 3)});
    if (!(r.kind == IntervalKind::II && r.flags.above_R && r.flags.above_H &&
          !r.flags.inside_S))
        return false;
    // the f_k chain separates underline R_2 from underline R_3
    auto p2 = rchain_profile({builtin_relation("Runder", 2), builtin_relation("neq")}, 3);
    auto p3 = rchain_profile({builtin_relation("Runder", 3), builtin_relation("neq")}, 3);
    return p2.size() == 1 && p3.size() == 1 && p2[0].exact && p3[0].exact &&
           p2[0].preserves && !p3[0].preserves;
}

bool criterion8() {
    CspVerdict odd = csp_verdict({builtin_relation("odd3")});
    if (!odd.polynomial || odd.reason != "binary_injection") return false;
    OrbitRelation or2 = formula_to_relation(parse_formula("x = y | y = z"), 3);
    if (csp_verdict({or2, builtin_relation("neq")}).polynomial) return false;
    CspVerdict cv = csp_verdict({or2});
    if (!cv.polynomial || cv.reason != "constant") return false;

    struct Setup {
        RelationEnv env;
        std::vector<std::pair<std::string, int>> shapes;
        CspVerdict cert;
    };
    std::vector<Setup> setups{
        {{{"odd3", builtin_relation("odd3")}}, {{"odd3", 3}}, {true, "binary_injection"}},
        {{{"I", builtin_relation("I")}, {"neq", builtin_relation("neq")}},
         {{"I", 4}, {"neq", 2}},
         {true, "binary_injection"}},
        {{{"or2", or2}}, {{"or2", 3}}, {true, "constant"}}};
    std::mt19937_64 rng(424242);
    for (const auto& setup : setups) {
        for (int t = 0; t < 334; ++t) {
            CspInstance inst;
            int nv = 2 + static_cast<int>(rng() % 6);
            for (int v = 0; v < nv; ++v) inst.variables.push_back("v" + std::to_string(v));
            int nc = 1 + static_cast<int>(rng() % 5);
            for (int c = 0; c < nc; ++c) {
                const auto& [name, arity] = setup.shapes[rng() % setup.shapes.size()];
                CspConstraint con;
                con.relation = name;
                for (int a = 0; a < arity; ++a)
                    con.args.push_back(inst.variables[rng() % static_cast<std::uint64_t>(nv)]);
                inst.constraints.push_back(std::move(con));
            }
            Solution fast = solve(inst, setup.env, setup.cert);
            if (fast.sat != brute_solve(inst, setup.env).sat) return false;
            if (fast.sat && !verify_solution(inst, setup.env, fast.assignment)) return false;
        }
    }
    return true;
}

bool criterion9() {
    for (const auto& rel : corpus()) {
        if (rel.orbits.empty()) continue; // classify_language needs a nonempty language
        ClonePosition pos = classify_language({rel});
        if (pos.kind != IntervalKind::II) continue; // flags only apply over I / I+
        if (pos.flags.above_B && !pos.flags.above_H) return false;
        if (pos.flags.inside_S && pos.flags.above_R) return false;
    }
    return true;
}

bool report(int number, const char* what, bool (*fn)()) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = fn();
    auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] criterion %d: %s (%llds)\n", ok ? "PASS" : "FAIL", number, what,
                static_cast<long long>(secs));
    std::fflush(stdout);
    return ok;
}

} // namespace

int main() {
    bool ok = true;
    ok &= report(1, "binary injection preservation matches reduced Horn", criterion1);
    ok &= report(2, "richard + injection preservation matches reduced negative", criterion2);
    ok &= report(3, "f_k witnesses against Rneq(3) and the underline R chain", criterion3);
    ok &= report(4, "pp-definition reproductions", criterion4);
    ok &= report(5, "Hubie violators: exact violation, clean cross-sampling", criterion5);
    ok &= report(6, "generation order vs brute oracle, monoid landmarks", criterion6);
    ok &= report(7, "classifier landmarks and the f_k chain profile", criterion7);
    ok &= report(8, "CSP verdicts and solver agreement with brute force", criterion8);
    ok &= report(9, "flag implications across the corpus", criterion9);
    return ok ? 0 : 1;
}
