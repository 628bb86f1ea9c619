#ifndef eqlat_preserve_hpp
#define eqlat_preserve_hpp

// Decide preservation of an orbit relation by a pattern operation.
//
// Exact search: a violation is an n x m matrix (n = op arity rows drawn from
// rel, m = rel arity columns) whose output column pattern lies outside rel.
// Output equality between two columns depends only on (a) which rule fires
// per column — determined by cell membership of input values in the op's
// In/NotIn sets and freshness — and (b) equality of key-projected inputs.
// Hence enumerating matrix cells over probe values (union of In/NotIn sets)
// plus canonically-named fresh symbols (restricted growth in column-major
// scan order) exhausts all behaviors: any concrete violating matrix maps to
// such a symbolic one by renaming its non-probe values in first-use order.
//
// The search iterates over target output patterns q outside rel, then over
// per-column rule plans consistent with q's equality classes, then assigns
// cells column by column with forward pruning:
//   - rule pattern / earlier-rule-failure constraints per column,
//   - key-cell copying within q-equal fresh classes and distinctness checks
//     across q-distinct fresh columns of the same rule,
//   - per-row admissibility: the row prefix pattern must match the prefix of
//     some rel orbit compatible with the plan-forced column equalities.

#include <map>
#include <optional>
#include <random>
#include <tuple>

#include "patops.hpp"

namespace eqlat {

struct ViolationWitness {
    std::vector<std::vector<int>> inputs; // n tuples, each of length rel.arity
    std::vector<int> output;              // concrete output tuple
    Partition output_pattern;
};

struct PreservationVerdict {
    bool preserves = true;
    std::optional<ViolationWitness> witness;
};

struct SampledVerdict {
    bool counterexample_found = false;
    std::optional<ViolationWitness> witness;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// Lemma 24: if any operation violates rel, one of arity |rel.orbits| does.
inline int violation_arity_bound(const OrbitRelation& rel) {
    return static_cast<int>(rel.orbits.size());
}

inline constexpr std::uint64_t kDefaultPreserveBudget = 100'000'000;

namespace detail {

struct ExactSearch {
    const PatternOperation& op;
    const OrbitRelation& rel;
    int n, m;
    std::vector<int> probe;
    std::vector<Partition> orbit_list; // rel.orbits as a vector
    std::uint64_t budget;
    std::uint64_t visited = 0;

    // per-q state
    const Partition* q = nullptr;
    std::vector<std::vector<int>> q_class_members; // columns per q-class
    std::vector<int> plan;                         // rule index per column
    std::vector<std::vector<SymbolicValue>> cells; // [row][col]
    std::vector<std::vector<char>> row_forced_eq;  // [row]: column -> group id or -1
    std::vector<std::vector<int>> known_val;       // [row][col]: plan-forced named value or -1
    // adm[row][d]: bitmask over orbit_list of orbits compatible with row's
    // first d assigned cells, the plan-known future cells, and the plan-forced
    // column equalities (d = number of assigned cells; columns fill in order)
    std::vector<std::vector<std::vector<std::uint64_t>>> adm;
    std::size_t mask_words = 0;
    // base-mask cache keyed by a row's (forced groups, known values)
    std::map<std::pair<std::vector<char>, std::vector<int>>, std::vector<std::uint64_t>> base_cache;
    std::optional<ViolationWitness> found;

    ExactSearch(const PatternOperation& o, const OrbitRelation& r, std::uint64_t b)
        : op(o), rel(r), n(o.arity), m(r.arity), probe(o.probe_values()),
          orbit_list(r.orbits.begin(), r.orbits.end()), budget(b) {}

    void bump() {
        if (++visited > budget)
            throw resource_error("preserves_exact: budget of " + std::to_string(budget) +
                                 " visited partial assignments exceeded");
    }

    static bool sym_eq(const SymbolicValue& a, const SymbolicValue& b) { return a == b; }

    const Rule& rule_of(int col) const { return op.rules[static_cast<std::size_t>(plan[static_cast<std::size_t>(col)])]; }

    bool rule_output_const(int r) const {
        return op.rules[static_cast<std::size_t>(r)].output.kind == OutputSpec::Kind::Const;
    }

    // Columns a and b (a < b) in the same q-class must produce equal outputs.
    // Const/Const: equal value (checked at plan time).  Fresh/Fresh: same
    // rule (streams are unique per rule) — enforced at plan time; key cells
    // are copied during assignment.  Mixed: impossible.
    bool plan_consistent() const {
        int nclasses = *std::max_element(q->begin(), q->end()) + 1;
        for (int c = 0; c < nclasses; ++c) {
            const auto& members = q_class_members[static_cast<std::size_t>(c)];
            for (std::size_t i = 1; i < members.size(); ++i) {
                int r0 = plan[static_cast<std::size_t>(members[0])];
                int ri = plan[static_cast<std::size_t>(members[i])];
                const auto& o0 = op.rules[static_cast<std::size_t>(r0)].output;
                const auto& oi = op.rules[static_cast<std::size_t>(ri)].output;
                if (o0.kind != oi.kind) return false;
                if (o0.kind == OutputSpec::Kind::Const) {
                    if (o0.const_value != oi.const_value) return false;
                } else if (r0 != ri) {
                    return false;
                }
            }
        }
        // q-distinct const outputs must differ in value
        for (int c1 = 0; c1 < nclasses; ++c1)
            for (int c2 = c1 + 1; c2 < nclasses; ++c2) {
                int ra = plan[static_cast<std::size_t>(q_class_members[static_cast<std::size_t>(c1)][0])];
                int rb = plan[static_cast<std::size_t>(q_class_members[static_cast<std::size_t>(c2)][0])];
                const auto& oa = op.rules[static_cast<std::size_t>(ra)].output;
                const auto& ob = op.rules[static_cast<std::size_t>(rb)].output;
                if (oa.kind == OutputSpec::Kind::Const && ob.kind == OutputSpec::Kind::Const &&
                    oa.const_value == ob.const_value)
                    return false;
            }
        return true;
    }

    static bool mask_empty(const std::vector<std::uint64_t>& mask) {
        for (auto w : mask)
            if (w) return false;
        return true;
    }

    // Per-plan setup: forced equal-column groups (same q-class firing a fresh
    // rule whose key contains the row), plan-known cells (In-singleton rule
    // patterns), and the base admissibility masks.  False = plan infeasible.
    bool setup_plan() {
        row_forced_eq.assign(static_cast<std::size_t>(n),
                             std::vector<char>(static_cast<std::size_t>(m), -1));
        for (std::size_t cls = 0; cls < q_class_members.size(); ++cls) {
            const auto& members = q_class_members[cls];
            if (members.size() < 2) continue;
            const auto& out = rule_of(members[0]).output;
            if (out.kind != OutputSpec::Kind::Fresh) continue;
            for (int keypos : out.key)
                for (int col : members)
                    row_forced_eq[static_cast<std::size_t>(keypos)][static_cast<std::size_t>(col)] =
                        static_cast<char>(cls);
        }
        known_val.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m), -1));
        for (int col = 0; col < m; ++col)
            for (int row = 0; row < n; ++row) {
                const ArgPattern& pat = rule_of(col).patterns[static_cast<std::size_t>(row)];
                if (pat.kind == ArgPattern::Kind::In && pat.values.size() == 1)
                    known_val[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                        pat.values[0];
            }
        mask_words = (orbit_list.size() + 63) / 64;
        adm.assign(static_cast<std::size_t>(n),
                   std::vector<std::vector<std::uint64_t>>(
                       static_cast<std::size_t>(m + 1),
                       std::vector<std::uint64_t>(mask_words, 0)));
        for (int row = 0; row < n; ++row) {
            const auto& forced = row_forced_eq[static_cast<std::size_t>(row)];
            const auto& kv = known_val[static_cast<std::size_t>(row)];
            auto& base = adm[static_cast<std::size_t>(row)][0];
            auto cache_key = std::make_pair(forced, kv);
            if (auto it = base_cache.find(cache_key); it != base_cache.end()) {
                base = it->second;
                if (mask_empty(base)) return false;
                continue;
            }
            // constrained pairs only: (i,j, must-be-equal-label?)
            std::vector<std::tuple<int, int, bool>> pairs;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) {
                    if (forced[static_cast<std::size_t>(i)] >= 0 &&
                        forced[static_cast<std::size_t>(i)] == forced[static_cast<std::size_t>(j)])
                        pairs.emplace_back(i, j, true);
                    else if (kv[static_cast<std::size_t>(i)] >= 0 && kv[static_cast<std::size_t>(j)] >= 0)
                        pairs.emplace_back(i, j, kv[static_cast<std::size_t>(i)] ==
                                                     kv[static_cast<std::size_t>(j)]);
                }
            for (std::size_t oi = 0; oi < orbit_list.size(); ++oi) {
                const Partition& p = orbit_list[oi];
                bool ok = true;
                for (const auto& [i, j, eq] : pairs)
                    if ((p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)]) != eq) {
                        ok = false;
                        break;
                    }
                if (ok) base[oi / 64] |= std::uint64_t{1} << (oi % 64);
            }
            base_cache.emplace(std::move(cache_key), base);
            if (mask_empty(base)) return false;
        }
        return true;
    }

    // Narrow row's admissible mask after placing `cell` at column `col`:
    // check the new cell against assigned earlier cells and known later ones.
    bool narrow_row(int row, int col, const SymbolicValue& cell) {
        auto& row_adm = adm[static_cast<std::size_t>(row)];
        const auto& prev = row_adm[static_cast<std::size_t>(col)];
        auto& next = row_adm[static_cast<std::size_t>(col) + 1];
        const auto& rowcells = cells[static_cast<std::size_t>(row)];
        const auto& kv = known_val[static_cast<std::size_t>(row)];
        if (kv[static_cast<std::size_t>(col)] >= 0 &&
            cell != SymbolicValue::named(kv[static_cast<std::size_t>(col)]))
            return false; // a forced copy clashing with the rule's In-singleton
        bool any = false;
        for (std::size_t w = 0; w < mask_words; ++w) next[w] = 0;
        for (std::size_t oi = 0; oi < orbit_list.size(); ++oi) {
            if (!(prev[oi / 64] >> (oi % 64) & 1)) continue;
            const Partition& p = orbit_list[oi];
            int pc = p[static_cast<std::size_t>(col)];
            bool ok = true;
            for (int i = 0; i < col && ok; ++i)
                if (sym_eq(rowcells[static_cast<std::size_t>(i)], cell) !=
                    (p[static_cast<std::size_t>(i)] == pc))
                    ok = false;
            for (int j = col + 1; j < m && ok; ++j)
                if (kv[static_cast<std::size_t>(j)] >= 0 &&
                    sym_eq(SymbolicValue::named(kv[static_cast<std::size_t>(j)]), cell) !=
                        (p[static_cast<std::size_t>(j)] == pc))
                    ok = false;
            if (ok) {
                next[oi / 64] |= std::uint64_t{1} << (oi % 64);
                any = true;
            }
        }
        return any;
    }

    bool column_matches_rule(int col, const Rule& rule) const {
        for (int r = 0; r < n; ++r)
            if (!arg_matches(rule.patterns[static_cast<std::size_t>(r)],
                             cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]))
                return false;
        return true;
    }

    OutputTerm column_output(int col) const {
        const Rule& rule = rule_of(col);
        if (rule.output.kind == OutputSpec::Kind::Const)
            return OutputTerm{OutputTerm::Kind::ConstVal, rule.output.const_value, 0, {}};
        OutputTerm t{OutputTerm::Kind::FreshVal, 0, rule.output.stream, {}};
        for (int pos : rule.output.key)
            t.key_values.push_back(cells[static_cast<std::size_t>(pos)][static_cast<std::size_t>(col)]);
        return t;
    }

    // After column `col` is fully assigned: rule matching, earlier-rule
    // failure, q-distinctness against earlier columns, row admissibility.
    bool column_checks(int col) {
        if (!column_matches_rule(col, rule_of(col))) return false;
        for (int r = 0; r < plan[static_cast<std::size_t>(col)]; ++r)
            if (column_matches_rule(col, op.rules[static_cast<std::size_t>(r)])) return false;
        OutputTerm out = column_output(col);
        for (int prev = 0; prev < col; ++prev) {
            bool want_equal = (*q)[static_cast<std::size_t>(prev)] == (*q)[static_cast<std::size_t>(col)];
            OutputTerm pout = column_output(prev);
            if ((pout == out) != want_equal) return false;
        }
        return true; // row admissibility is maintained incrementally
    }

    // Count fresh symbols used in scan order before (row 0..n-1 of columns <
    // col) — cells are assigned column-major, rows inner.
    int fresh_used_before(int col, int row) const {
        int mx = -1;
        for (int c = 0; c <= col; ++c)
            for (int r = 0; r < (c == col ? row : n); ++r) {
                const auto& v = cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                if (v.kind == SymbolicValue::Kind::FreshSym) mx = std::max(mx, v.value);
            }
        return mx + 1;
    }

    void assign_cells(int col, int row) {
        if (found) return;
        if (row == n) {
            bump();
            if (!column_checks(col)) return;
            if (col + 1 == m) {
                finish();
                return;
            }
            assign_cells(col + 1, 0);
            return;
        }
        // forced by key-copy from the class leader?
        int cls = (*q)[static_cast<std::size_t>(col)];
        int leader = q_class_members[static_cast<std::size_t>(cls)][0];
        auto& cell = cells[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        auto try_cell = [&](SymbolicValue v) {
            cell = v;
            // immediate pruning: the extended row must keep an admissible orbit
            if (narrow_row(row, col, v)) assign_cells(col, row + 1);
        };
        if (leader < col) {
            const auto& out = rule_of(leader).output;
            if (out.kind == OutputSpec::Kind::Fresh &&
                std::binary_search(out.key.begin(), out.key.end(), row)) {
                try_cell(cells[static_cast<std::size_t>(row)][static_cast<std::size_t>(leader)]);
                return;
            }
        }
        const ArgPattern& pat = rule_of(col).patterns[static_cast<std::size_t>(row)];
        // named candidates
        if (pat.kind == ArgPattern::Kind::In) {
            for (int v : pat.values) {
                try_cell(SymbolicValue::named(v));
                if (found) return;
            }
        } else {
            for (int v : probe) {
                if (pat.kind == ArgPattern::Kind::NotIn &&
                    std::binary_search(pat.values.begin(), pat.values.end(), v))
                    continue;
                try_cell(SymbolicValue::named(v));
                if (found) return;
            }
            int fu = fresh_used_before(col, row);
            for (int f = 0; f <= fu; ++f) {
                try_cell(SymbolicValue::fresh(f));
                if (found) return;
            }
        }
        cell = SymbolicValue{}; // leave no stale value behind
    }

    void finish() {
        // concretize: named values stay; fresh symbol i -> base + i
        int base = 0;
        for (int v : op.support()) base = std::max(base, v + 1);
        std::vector<std::vector<int>> inputs(static_cast<std::size_t>(n),
                                             std::vector<int>(static_cast<std::size_t>(m)));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < m; ++c) {
                const auto& v = cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                inputs[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    v.kind == SymbolicValue::Kind::Named ? v.value : base + v.value;
            }
        // replay concretely and confirm
        for (const auto& row : inputs)
            if (!contains(rel, row)) return; // not a real witness; keep searching
        std::vector<OutputTerm> outs = apply_concrete(op, inputs);
        Partition pat = pattern_of(outs);
        if (rel.orbits.count(pat)) return; // not a violation after concretization
        // distinct concrete output values per distinct OutputTerm
        std::vector<int> output(outs.size());
        int next_fresh = base + 1000;
        for (int v : op.support()) next_fresh = std::max(next_fresh, v + 1);
        std::vector<OutputTerm> seen;
        std::vector<int> seen_vals;
        for (std::size_t i = 0; i < outs.size(); ++i) {
            if (outs[i].kind == OutputTerm::Kind::ConstVal) {
                output[i] = outs[i].const_value;
                continue;
            }
            auto it = std::find(seen.begin(), seen.end(), outs[i]);
            if (it == seen.end()) {
                seen.push_back(outs[i]);
                seen_vals.push_back(next_fresh++);
                output[i] = seen_vals.back();
            } else {
                output[i] = seen_vals[static_cast<std::size_t>(it - seen.begin())];
            }
        }
        found = ViolationWitness{std::move(inputs), std::move(output), pat};
    }

    std::optional<ViolationWitness> search_target(const Partition& target) {
        q = &target;
        int nclasses = *std::max_element(target.begin(), target.end()) + 1;
        q_class_members.assign(static_cast<std::size_t>(nclasses), {});
        for (int c = 0; c < m; ++c)
            q_class_members[static_cast<std::size_t>(target[static_cast<std::size_t>(c)])].push_back(c);
        plan.assign(static_cast<std::size_t>(m), 0);
        cells.assign(static_cast<std::size_t>(n),
                     std::vector<SymbolicValue>(static_cast<std::size_t>(m)));
        found.reset();
        enumerate_plans(0);
        return found;
    }

    void enumerate_plans(int col) {
        if (found) return;
        if (col == m) {
            if (!plan_consistent()) return;
            if (!setup_plan()) return;
            assign_cells(0, 0);
            return;
        }
        // cheap per-prefix consistency: within-class members must agree with
        // the class leader's output kind/value/rule
        for (int r = 0; r < static_cast<int>(op.rules.size()); ++r) {
            plan[static_cast<std::size_t>(col)] = r;
            int cls = (*q)[static_cast<std::size_t>(col)];
            int leader = q_class_members[static_cast<std::size_t>(cls)][0];
            if (leader < col) {
                int rl = plan[static_cast<std::size_t>(leader)];
                const auto& ol = op.rules[static_cast<std::size_t>(rl)].output;
                const auto& oc = op.rules[static_cast<std::size_t>(r)].output;
                if (ol.kind != oc.kind) continue;
                if (ol.kind == OutputSpec::Kind::Const) {
                    if (ol.const_value != oc.const_value) continue;
                } else if (rl != r) {
                    continue;
                }
            }
            enumerate_plans(col + 1);
            if (found) return;
        }
    }
};

} // namespace detail

inline PreservationVerdict preserves_exact(const PatternOperation& op, const OrbitRelation& rel,
                                           std::uint64_t budget = kDefaultPreserveBudget,
                                           int cap = kDefaultPartitionCap) {
    if (rel.orbits.empty()) return {};    // no rows to pick: vacuously preserved
    detail::ExactSearch search(op, rel, budget);
    for (const auto& target : enumerate_partitions(rel.arity, cap)) {
        if (rel.orbits.count(target)) continue;
        auto witness = search.search_target(target);
        if (witness) return PreservationVerdict{false, std::move(witness)};
    }
    return {};
}

// Seeded sampling: per sample, each of the op's n argument rows is a
// uniformly chosen orbit of rel instantiated by a random injective map of
// its blocks into {0..pool-1}; the output pattern is checked against rel.
inline SampledVerdict preserves_sampled(const PatternOperation& op, const OrbitRelation& rel,
                                        std::uint64_t samples, std::uint64_t seed,
                                        int value_pool_size = 0) {
    if (samples < 1) throw std::invalid_argument("preserves_sampled: samples must be >= 1");
    int pool = value_pool_size > 0 ? value_pool_size : 4 * rel.arity;
    int max_blocks = 0;
    for (const auto& p : rel.orbits) max_blocks = std::max(max_blocks, block_count(p));
    if (pool < max_blocks)
        throw std::invalid_argument("preserves_sampled: value pool too small to instantiate orbits");
    if (rel.orbits.empty()) return SampledVerdict{false, std::nullopt, samples, seed};

    std::mt19937_64 rng(seed);
    std::vector<Partition> orbit_list(rel.orbits.begin(), rel.orbits.end());
    std::uniform_int_distribution<std::size_t> orbit_dist(0, orbit_list.size() - 1);
    int n = op.arity, m = rel.arity;
    // a permutation of the pool, partially re-shuffled in place per row: a
    // partial Fisher-Yates pass is uniform from any starting arrangement
    std::vector<int> vals(static_cast<std::size_t>(pool));
    for (int i = 0; i < pool; ++i) vals[static_cast<std::size_t>(i)] = i;

    // per rule: the argument positions with a non-Any pattern (matching only
    // needs to look at those)
    std::vector<std::vector<int>> constrained(op.rules.size());
    for (std::size_t r = 0; r < op.rules.size(); ++r)
        for (int i = 0; i < n; ++i)
            if (op.rules[r].patterns[static_cast<std::size_t>(i)].kind != ArgPattern::Kind::Any)
                constrained[r].push_back(i);

    std::vector<int> rows_flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
    auto cell = [&](int r, int c) -> int& {
        return rows_flat[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) +
                         static_cast<std::size_t>(c)];
    };
    std::vector<std::size_t> rule_of(static_cast<std::size_t>(m));
    Partition pat(static_cast<std::size_t>(m));
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (int r = 0; r < n; ++r) {
            const Partition& orbit = orbit_list[orbit_dist(rng)];
            int blocks = block_count(orbit);
            for (int b = 0; b < blocks; ++b) {
                std::uniform_int_distribution<int> pick(b, pool - 1);
                std::swap(vals[static_cast<std::size_t>(b)], vals[static_cast<std::size_t>(pick(rng))]);
            }
            for (int c = 0; c < m; ++c)
                cell(r, c) = vals[static_cast<std::size_t>(orbit[static_cast<std::size_t>(c)])];
        }
        // first matching rule per output position
        for (int c = 0; c < m; ++c) {
            std::size_t hit = op.rules.size();
            for (std::size_t r = 0; r < op.rules.size() && hit == op.rules.size(); ++r) {
                bool ok = true;
                for (int i : constrained[r]) {
                    if (!arg_matches(op.rules[r].patterns[static_cast<std::size_t>(i)],
                                     SymbolicValue::named(cell(i, c)))) {
                        ok = false;
                        break;
                    }
                }
                if (ok) hit = r;
            }
            if (hit == op.rules.size())
                throw std::logic_error("preserves_sampled: decision list not total");
            rule_of[static_cast<std::size_t>(c)] = hit;
        }
        // output equality pattern, without materializing fresh key tuples:
        // Const outputs compare by value, Fresh outputs by stream and by the
        // row values at the key positions
        auto outputs_equal = [&](int c, int d) {
            const OutputSpec& oc = op.rules[rule_of[static_cast<std::size_t>(c)]].output;
            const OutputSpec& od = op.rules[rule_of[static_cast<std::size_t>(d)]].output;
            if (oc.kind != od.kind) return false;
            if (oc.kind == OutputSpec::Kind::Const) return oc.const_value == od.const_value;
            if (oc.stream != od.stream) return false;
            for (int k : oc.key)
                if (cell(k, c) != cell(k, d)) return false;
            return true;
        };
        int next_class = 0;
        for (int c = 0; c < m; ++c) {
            int cls = next_class;
            for (int d = 0; d < c; ++d)
                if (outputs_equal(d, c)) {
                    cls = pat[static_cast<std::size_t>(d)];
                    break;
                }
            if (cls == next_class) ++next_class;
            pat[static_cast<std::size_t>(c)] = cls;
        }
        if (!rel.orbits.count(pat)) {
            std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r) {
                auto& row = rows[static_cast<std::size_t>(r)];
                row.resize(static_cast<std::size_t>(m));
                for (int c = 0; c < m; ++c) row[static_cast<std::size_t>(c)] = cell(r, c);
            }
            std::vector<OutputTerm> outs = apply_concrete(op, rows);
            // concretize outputs
            std::vector<int> output(outs.size());
            int next_fresh = pool;
            for (int v : op.support()) next_fresh = std::max(next_fresh, v + 1);
            std::vector<OutputTerm> seen;
            std::vector<int> seen_vals;
            for (std::size_t i = 0; i < outs.size(); ++i) {
                if (outs[i].kind == OutputTerm::Kind::ConstVal) {
                    output[i] = outs[i].const_value;
                    continue;
                }
                auto it = std::find(seen.begin(), seen.end(), outs[i]);
                if (it == seen.end()) {
                    seen.push_back(outs[i]);
                    seen_vals.push_back(next_fresh++);
                    output[i] = seen_vals.back();
                } else {
                    output[i] = seen_vals[static_cast<std::size_t>(it - seen.begin())];
                }
            }
            return SampledVerdict{true, ViolationWitness{rows, std::move(output), pat}, s + 1, seed};
        }
    }
    return SampledVerdict{false, std::nullopt, samples, seed};
}

// Independent replay of a witness through the concrete evaluator.
inline bool verify_witness(const PatternOperation& op, const OrbitRelation& rel,
                           const ViolationWitness& w) {
    for (const auto& row : w.inputs)
        if (!contains(rel, row)) return false;
    auto outs = apply_concrete(op, w.inputs);
    return pattern_of(outs) == w.output_pattern && !rel.orbits.count(w.output_pattern);
}

} // namespace eqlat

#endif
