#ifndef eqlat_continuum_hpp
#define eqlat_continuum_hpp

// The antichain family gamma_n / C_n and the Hubie-violators H_n: build the
// 2n-ary relations C_n, construct H_n from the enumerated low-entry rows of
// C_n, check the exact violation identity, and sample cross-preservation to
// demonstrate that distinct index sets yield distinct clones.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "preserve.hpp"

namespace eqlat {

// C_n is 2n-ary with the column convention (x_1, y_1, ..., x_n, y_n):
// x_i sits at position 2(i-1), y_i at position 2(i-1)+1.
struct GammaRelation {
    int n = 0;
    OrbitRelation rel;
};

// gamma_n := delta_n ∧ ⋀_{A ⊆ {1..n}, 1 < |A| < n} kappa_A, where
//   delta_n = x_1 != y_1 ∨ ... ∨ x_n != y_n
//   kappa_A = y_{j_1} != x_{j_2} ∨ y_{j_2} != x_{j_3} ∨ ... ∨ y_{j_r} != x_{j_1}
// for A = {j_1 < ... < j_r}.
inline GammaRelation c_relation(int n, int cap = kDefaultPartitionCap) {
    if (n < 3 || n > 5)
        throw std::invalid_argument("c_relation: n must be in 3..5");
    auto x = [](int i) { return static_cast<std::size_t>(2 * (i - 1)); };     // 1-based i
    auto y = [](int i) { return static_cast<std::size_t>(2 * (i - 1) + 1); };
    auto sat = [&](const Partition& p) {
        bool delta = false;
        for (int i = 1; i <= n && !delta; ++i)
            if (p[x(i)] != p[y(i)]) delta = true;
        if (!delta) return false;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            int r = __builtin_popcount(mask);
            if (r <= 1 || r >= n) continue;
            std::vector<int> j;
            for (int i = 1; i <= n; ++i)
                if (mask & (1u << (i - 1))) j.push_back(i);
            bool kappa = false;
            for (int t = 0; t < r && !kappa; ++t)
                if (p[y(j[static_cast<std::size_t>(t)])] !=
                    p[x(j[static_cast<std::size_t>((t + 1) % r)])])
                    kappa = true;
            if (!kappa) return false;
        }
        return true;
    };
    return {n, detail::relation_from_predicate(2 * n, sat, cap)};
}

// H_n, built from the lexicographic enumeration c_1, ..., c_m of
// C_n ∩ {1,...,n+1}^{2n}: an m-ary operation mapping the (i,x)-th and
// (i,y)-th column tuples to i, so that H_n(c_1,...,c_m) = (1,1,...,n,n),
// and taking fresh pairwise-distinct values elsewhere.
struct HubieOperation {
    int n = 0;
    int m = 0;
    std::vector<std::vector<int>> rows; // c_1..c_m, each of length 2n
    PatternOperation op;                // arity m
};

inline HubieOperation hubie_operation(int n, int cap = kDefaultPartitionCap) {
    if (n < 3 || n > 4)
        throw std::invalid_argument("hubie_operation: n must be 3 or 4");
    GammaRelation c = c_relation(n, cap);
    int arity = 2 * n;
    // lexicographic enumeration of {1..n+1}^{2n}, filtered through C_n
    std::vector<std::vector<int>> rows;
    std::vector<int> t(static_cast<std::size_t>(arity), 1);
    for (;;) {
        if (contains(c.rel, t)) rows.push_back(t);
        int pos = arity - 1;
        while (pos >= 0 && t[static_cast<std::size_t>(pos)] == n + 1) {
            t[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++t[static_cast<std::size_t>(pos)];
    }
    int m = static_cast<int>(rows.size());
    if (m == 0) throw std::logic_error("hubie_operation: empty enumeration");
    // one rule per column: the exact column m-tuple maps to its pair index
    std::vector<Rule> rules;
    std::set<std::pair<std::vector<int>, int>> seen; // (column tuple, output)
    for (int p = 0; p < arity; ++p) {
        std::vector<int> column;
        column.reserve(static_cast<std::size_t>(m));
        for (const auto& row : rows) column.push_back(row[static_cast<std::size_t>(p)]);
        int out = p / 2 + 1;
        for (const auto& [col, o] : seen)
            if (col == column && o != out)
                throw std::logic_error("hubie_operation: coinciding columns with "
                                       "conflicting outputs");
        if (!seen.insert({column, out}).second) continue; // duplicate column, same output
        std::vector<ArgPattern> pats;
        pats.reserve(static_cast<std::size_t>(m));
        for (int v : column) pats.push_back(ArgPattern::in({v}));
        rules.push_back(Rule{std::move(pats), OutputSpec::constant(out)});
    }
    PatternOperation op = build_operation(m, std::move(rules), "H_" + std::to_string(n));
    return {n, m, std::move(rows), std::move(op)};
}

struct HubieViolation {
    bool ok = false;
    ViolationWitness witness;
};

// Apply H_n to its own defining rows: the output must have the equality
// pattern of (1,1,2,2,...,n,n), a tuple outside C_n (it falsifies delta_n).
// Exact — no sampling — and the witness replays concretely.
inline HubieViolation hubie_violation_check(int n, int cap = kDefaultPartitionCap) {
    HubieOperation h = hubie_operation(n, cap);
    GammaRelation c = c_relation(n, cap);
    for (const auto& row : h.rows)
        if (!contains(c.rel, row))
            throw std::logic_error("hubie_violation_check: enumerated row not in C_n");
    std::vector<OutputTerm> out = apply_concrete(h.op, h.rows);
    std::vector<int> concrete;
    for (const auto& term : out) {
        if (term.kind != OutputTerm::Kind::ConstVal)
            throw std::logic_error("hubie_violation_check: non-constant output on a "
                                   "defining column");
        concrete.push_back(term.const_value);
    }
    std::vector<int> expected;
    for (int i = 1; i <= n; ++i) {
        expected.push_back(i);
        expected.push_back(i);
    }
    HubieViolation v;
    v.witness = ViolationWitness{h.rows, concrete, pattern_of(concrete)};
    v.ok = concrete == expected && !contains(c.rel, concrete) &&
           verify_witness(h.op, c.rel, v.witness);
    return v;
}

struct ContinuumCross {
    int k = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool counterexample_found = false;
};

struct AntichainEntry {
    int n = 0;
    int m = 0;
    HubieViolation violation;          // H_n violates C_n, exact
    std::vector<ContinuumCross> cross; // sampled: H_n versus the other side's C_k
};

struct AntichainReport {
    std::set<int> a;
    std::set<int> b;
    std::vector<AntichainEntry> entries;
};

// Separate the clones attached to index sets A != B over the available
// n in {3,4}: for each n in the symmetric difference, H_n violates C_n
// exactly while sampling finds no counterexample against the other side's
// relations (the preservation direction is the lemma left to the source).
inline AntichainReport antichain_demo(const std::set<int>& a, const std::set<int>& b,
                                      std::uint64_t samples = 10'000, std::uint64_t seed = 42,
                                      int cap = kDefaultPartitionCap) {
    if (a == b) throw std::invalid_argument("antichain_demo: index sets must differ");
    auto check_range = [](const std::set<int>& s) {
        for (int n : s)
            if (n < 3 || n > 4)
                throw std::invalid_argument("antichain_demo: indices must be in {3,4}");
    };
    check_range(a);
    check_range(b);
    std::set<int> sym_diff, all;
    for (int n : a)
        if (!b.count(n)) sym_diff.insert(n);
    for (int n : b)
        if (!a.count(n)) sym_diff.insert(n);
    all.insert(a.begin(), a.end());
    all.insert(b.begin(), b.end());
    AntichainReport report{a, b, {}};
    for (int n : sym_diff) {
        AntichainEntry e;
        e.n = n;
        HubieOperation h = hubie_operation(n, cap);
        e.m = h.m;
        e.violation = hubie_violation_check(n, cap);
        for (int k : all) {
            if (k == n) continue;
            GammaRelation ck = c_relation(k, cap);
            SampledVerdict v = preserves_sampled(h.op, ck.rel, samples, seed, 4 * k);
            e.cross.push_back({k, v.samples, v.seed, v.counterexample_found});
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

} // namespace eqlat

#endif
