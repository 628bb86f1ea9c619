#ifndef eqlat_patops_hpp
#define eqlat_patops_hpp

// Finitely-presented operations on N as total decision lists.  Outputs are
// constants or fresh-injective values; symbolic output equality: Const c =
// Const c' iff c = c', Fresh(s,k) = Fresh(s',k') iff s = s' and k = k',
// Const never equals Fresh (each builtin is realizable as a genuine function
// with these equalities; user-built lists use the same symbolic semantics).

#include "core.hpp"

namespace eqlat {

struct ArgPattern {
    enum class Kind { Any, In, NotIn } kind = Kind::Any;
    std::vector<int> values; // sorted, for In/NotIn

    static ArgPattern any() { return {}; }
    static ArgPattern in(std::vector<int> vs) {
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return ArgPattern{Kind::In, std::move(vs)};
    }
    static ArgPattern not_in(std::vector<int> vs) {
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return ArgPattern{Kind::NotIn, std::move(vs)};
    }
    bool operator==(const ArgPattern&) const = default;
};

struct OutputSpec {
    enum class Kind { Const, Fresh } kind = Kind::Const;
    int const_value = 0;
    int stream = 0;
    std::vector<int> key; // argument positions (0-based), sorted, nonempty

    static OutputSpec constant(int c) { return OutputSpec{Kind::Const, c, 0, {}}; }
    static OutputSpec fresh(int stream, std::vector<int> key) {
        std::sort(key.begin(), key.end());
        return OutputSpec{Kind::Fresh, 0, stream, std::move(key)};
    }
    bool operator==(const OutputSpec&) const = default;
};

struct Rule {
    std::vector<ArgPattern> patterns;
    OutputSpec output;
    bool operator==(const Rule&) const = default;
};

struct PatternOperation {
    int arity = 0;
    std::vector<Rule> rules;
    std::string name;                 // optional, for reports
    bool default_appended = false;    // build_operation added the catch-all
    bool symbolic_only = false;       // user-built: realizability not checked

    // union of all In/NotIn sets and Const output values
    std::vector<int> support() const {
        std::set<int> s;
        for (const auto& r : rules) {
            for (const auto& p : r.patterns) s.insert(p.values.begin(), p.values.end());
            if (r.output.kind == OutputSpec::Kind::Const) s.insert(r.output.const_value);
        }
        return {s.begin(), s.end()};
    }
    // union of In/NotIn sets only — the values rule matching can distinguish
    std::vector<int> probe_values() const {
        std::set<int> s;
        for (const auto& r : rules)
            for (const auto& p : r.patterns) s.insert(p.values.begin(), p.values.end());
        return {s.begin(), s.end()};
    }
};

// Symbolic input value: a named natural or an anonymous fresh symbol,
// implicitly distinct from every named value and from other fresh symbols.
struct SymbolicValue {
    enum class Kind { Named, FreshSym } kind = Kind::Named;
    int value = 0; // named value, or fresh symbol index
    static SymbolicValue named(int v) { return {Kind::Named, v}; }
    static SymbolicValue fresh(int i) { return {Kind::FreshSym, i}; }
    auto operator<=>(const SymbolicValue&) const = default;
};

inline bool arg_matches(const ArgPattern& p, const SymbolicValue& v) {
    switch (p.kind) {
        case ArgPattern::Kind::Any: return true;
        case ArgPattern::Kind::In:
            return v.kind == SymbolicValue::Kind::Named &&
                   std::binary_search(p.values.begin(), p.values.end(), v.value);
        case ArgPattern::Kind::NotIn:
            return v.kind != SymbolicValue::Kind::Named ||
                   !std::binary_search(p.values.begin(), p.values.end(), v.value);
    }
    return false;
}

struct OutputTerm {
    enum class Kind { ConstVal, FreshVal } kind = Kind::ConstVal;
    int const_value = 0;
    int stream = 0;
    std::vector<SymbolicValue> key_values;
    auto operator<=>(const OutputTerm&) const = default;
};

// Index of the first rule matching the given argument row.
inline std::size_t first_matching_rule(const PatternOperation& op,
                                       const std::vector<SymbolicValue>& row) {
    for (std::size_t r = 0; r < op.rules.size(); ++r) {
        bool ok = true;
        for (int i = 0; i < op.arity && ok; ++i)
            ok = arg_matches(op.rules[r].patterns[static_cast<std::size_t>(i)],
                             row[static_cast<std::size_t>(i)]);
        if (ok) return r;
    }
    throw std::logic_error("first_matching_rule: decision list not total");
}

inline OutputTerm apply_row(const PatternOperation& op, const std::vector<SymbolicValue>& row) {
    const Rule& rule = op.rules[first_matching_rule(op, row)];
    if (rule.output.kind == OutputSpec::Kind::Const)
        return OutputTerm{OutputTerm::Kind::ConstVal, rule.output.const_value, 0, {}};
    OutputTerm t{OutputTerm::Kind::FreshVal, 0, rule.output.stream, {}};
    for (int pos : rule.output.key) t.key_values.push_back(row[static_cast<std::size_t>(pos)]);
    return t;
}

// Componentwise application: columns[i] is the i-th argument tuple; row j of
// the application is op(columns[0][j], ..., columns[n-1][j]).  Returns the
// output terms and their equality pattern.
inline std::pair<std::vector<OutputTerm>, Partition>
apply_symbolic(const PatternOperation& op, const std::vector<std::vector<SymbolicValue>>& columns) {
    if (static_cast<int>(columns.size()) != op.arity)
        throw std::invalid_argument("apply_symbolic: wrong number of argument tuples");
    std::size_t m = columns.empty() ? 0 : columns[0].size();
    for (const auto& c : columns)
        if (c.size() != m) throw std::invalid_argument("apply_symbolic: ragged argument tuples");
    std::vector<OutputTerm> out;
    out.reserve(m);
    std::vector<SymbolicValue> row(static_cast<std::size_t>(op.arity));
    for (std::size_t j = 0; j < m; ++j) {
        for (int i = 0; i < op.arity; ++i)
            row[static_cast<std::size_t>(i)] = columns[static_cast<std::size_t>(i)][j];
        out.push_back(apply_row(op, row));
    }
    Partition pattern = pattern_of(out);
    return {std::move(out), std::move(pattern)};
}

// Concrete application over naturals (for witness replay).
inline std::vector<OutputTerm> apply_concrete(const PatternOperation& op,
                                              const std::vector<std::vector<int>>& columns) {
    std::vector<std::vector<SymbolicValue>> sym(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i)
        for (int v : columns[i]) sym[i].push_back(SymbolicValue::named(v));
    return apply_symbolic(op, sym).first;
}

// ---------------------------------------------------------------------------
// Builders

inline PatternOperation build_operation(int arity, std::vector<Rule> rules,
                                        std::string name = "", bool builtin = false) {
    if (arity < 1) throw std::invalid_argument("build_operation: arity must be positive");
    if (rules.empty()) throw std::invalid_argument("build_operation: empty rule list");
    for (const auto& r : rules) {
        if (static_cast<int>(r.patterns.size()) != arity)
            throw std::invalid_argument("build_operation: rule arity mismatch");
        for (const auto& p : r.patterns)
            if (p.kind == ArgPattern::Kind::In && p.values.empty())
                throw std::invalid_argument("build_operation: In(empty) pattern is vacuous");
        if (r.output.kind == OutputSpec::Kind::Fresh) {
            if (r.output.key.empty())
                throw std::invalid_argument("build_operation: empty fresh key");
            for (int pos : r.output.key)
                if (pos < 0 || pos >= arity)
                    throw std::invalid_argument("build_operation: fresh key position out of range");
        }
    }
    // stream ids must be unique per rule
    std::set<int> streams;
    for (const auto& r : rules)
        if (r.output.kind == OutputSpec::Kind::Fresh && !streams.insert(r.output.stream).second)
            throw std::invalid_argument("build_operation: duplicate fresh stream id");
    PatternOperation op;
    op.arity = arity;
    op.rules = std::move(rules);
    op.name = std::move(name);
    op.symbolic_only = !builtin;
    const Rule& last = op.rules.back();
    bool total = std::all_of(last.patterns.begin(), last.patterns.end(), [](const ArgPattern& p) {
        return p.kind == ArgPattern::Kind::Any;
    });
    if (!total) {
        int stream = 0;
        while (streams.count(stream)) ++stream;
        std::vector<int> all;
        for (int i = 0; i < arity; ++i) all.push_back(i);
        op.rules.push_back(Rule{std::vector<ArgPattern>(static_cast<std::size_t>(arity)),
                                OutputSpec::fresh(stream, std::move(all))});
        op.default_appended = true;
    }
    return op;
}

namespace detail {

inline std::vector<int> all_positions(int arity) {
    std::vector<int> v(static_cast<std::size_t>(arity));
    for (int i = 0; i < arity; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

} // namespace detail

// f_k(x,1,..,1)=1; f_k(2,x,2,..,2)=2; ...; f_k(k,..,k,x)=k; fresh otherwise.
inline PatternOperation op_fk(int k) {
    if (k < 3) throw std::invalid_argument("op_fk: requires k >= 3");
    std::vector<Rule> rules;
    for (int j = 1; j <= k; ++j) {
        std::vector<ArgPattern> pats;
        for (int i = 1; i <= k; ++i)
            pats.push_back(i == j ? ArgPattern::any() : ArgPattern::in({j}));
        rules.push_back(Rule{std::move(pats), OutputSpec::constant(j)});
    }
    rules.push_back(Rule{std::vector<ArgPattern>(static_cast<std::size_t>(k)),
                         OutputSpec::fresh(0, detail::all_positions(k))});
    return build_operation(k, std::move(rules), "f" + std::to_string(k), true);
}

// g_k(0,x1..xk) = f_k(x1..xk); pairwise distinct fresh values otherwise.
// One fresh stream keyed on all positions covers both regimes: the first
// coordinate 0 is part of the key, separating the f_k-fresh region from the
// generic region, and f_k's constants never collide with fresh values.
inline PatternOperation op_gk(int k) {
    if (k < 3) throw std::invalid_argument("op_gk: requires k >= 3");
    std::vector<Rule> rules;
    for (int j = 1; j <= k; ++j) {
        std::vector<ArgPattern> pats{ArgPattern::in({0})};
        for (int i = 1; i <= k; ++i)
            pats.push_back(i == j ? ArgPattern::any() : ArgPattern::in({j}));
        rules.push_back(Rule{std::move(pats), OutputSpec::constant(j)});
    }
    rules.push_back(Rule{std::vector<ArgPattern>(static_cast<std::size_t>(k + 1)),
                         OutputSpec::fresh(0, detail::all_positions(k + 1))});
    return build_operation(k + 1, std::move(rules), "g" + std::to_string(k), true);
}

// k-bar: copies a bounded first argument (one Const rule per value < k),
// injective in the pair elsewhere.
inline PatternOperation op_bar(int k) {
    if (k < 1) throw std::invalid_argument("op_bar: requires k >= 1");
    std::vector<Rule> rules;
    for (int j = 0; j < k; ++j)
        rules.push_back(Rule{{ArgPattern::in({j}), ArgPattern::any()}, OutputSpec::constant(j)});
    rules.push_back(Rule{{ArgPattern::any(), ArgPattern::any()}, OutputSpec::fresh(0, {0, 1})});
    return build_operation(2, std::move(rules), "bar" + std::to_string(k), true);
}

inline PatternOperation op_generic_injection(int n) {
    if (n < 1) throw std::invalid_argument("op_generic_injection: arity must be positive");
    std::vector<Rule> rules{Rule{std::vector<ArgPattern>(static_cast<std::size_t>(n)),
                                 OutputSpec::fresh(0, detail::all_positions(n))}};
    return build_operation(n, std::move(rules), "inj" + std::to_string(n), true);
}

inline PatternOperation op_constant(int c, int arity = 1) {
    std::vector<Rule> rules{Rule{std::vector<ArgPattern>(static_cast<std::size_t>(arity)),
                                 OutputSpec::constant(c)}};
    return build_operation(arity, std::move(rules), "const" + std::to_string(c), true);
}

// Projection composed with a unary injection (arg-copy outputs are outside
// the model); equivalent for every dependency/preservation question here.
inline PatternOperation op_projection(int n, int i) {
    if (i < 1 || i > n) throw std::invalid_argument("op_projection: index out of range");
    std::vector<Rule> rules{Rule{std::vector<ArgPattern>(static_cast<std::size_t>(n)),
                                 OutputSpec::fresh(0, {i - 1})}};
    return build_operation(n, std::move(rules), "proj" + std::to_string(n) + "_" + std::to_string(i), true);
}

// Binary operation injective in the second direction that violates ODD_3:
// r(1,y) = r(2,y) = s(y) with s injective; generic injection elsewhere.
inline PatternOperation op_richard() {
    std::vector<Rule> rules{
        Rule{{ArgPattern::in({1, 2}), ArgPattern::any()}, OutputSpec::fresh(0, {1})},
        Rule{{ArgPattern::any(), ArgPattern::any()}, OutputSpec::fresh(1, {0, 1})}};
    return build_operation(2, std::move(rules), "richard", true);
}

// Quasilinear binary operation: f(x,y) = a when [x in C] xor [y in C] = 0,
// b otherwise.
inline PatternOperation op_quasilinear_xor(std::vector<int> cell, int a, int b) {
    if (cell.empty()) throw std::invalid_argument("op_quasilinear_xor: empty cell");
    auto in_c = [&] { return ArgPattern::in(cell); };
    auto out_c = [&] { return ArgPattern::not_in(cell); };
    std::vector<Rule> rules{
        Rule{{in_c(), in_c()}, OutputSpec::constant(a)},
        Rule{{in_c(), out_c()}, OutputSpec::constant(b)},
        Rule{{out_c(), in_c()}, OutputSpec::constant(b)},
        Rule{{ArgPattern::any(), ArgPattern::any()}, OutputSpec::constant(a)}};
    return build_operation(2, std::move(rules), "qxor", true);
}

// Essential binary operation with range exactly {0..r-1}:
//   f(0,0) = 0; f(i,y) = i for 2 <= i < r; f(x,y) = 1 otherwise.
// Depends on both arguments (f(0,0)=0, f(0,1)=1, f(1,0)=1) and is not
// quasilinear for r = 2 (AND-like table).
inline PatternOperation op_essential_finite(int r) {
    if (r < 2) throw std::invalid_argument("op_essential_finite: requires r >= 2");
    std::vector<Rule> rules;
    rules.push_back(Rule{{ArgPattern::in({0}), ArgPattern::in({0})}, OutputSpec::constant(0)});
    for (int i = 2; i < r; ++i)
        rules.push_back(Rule{{ArgPattern::in({i}), ArgPattern::any()}, OutputSpec::constant(i)});
    rules.push_back(Rule{{ArgPattern::any(), ArgPattern::any()}, OutputSpec::constant(1)});
    return build_operation(2, std::move(rules), "ess" + std::to_string(r), true);
}

// Unary operation with the given capped kernel profile (entries in
// {1..cap-1, omega-as-last-entries}; omega encoded below as kOmegaEntry).
// Non-final infinite classes are approximated by classes of size `cap`
// (indistinguishable through any relation of arity <= cap).
inline constexpr int kOmegaEntry = -1;

inline PatternOperation op_unary_from_kernel(const std::vector<int>& profile, int cap) {
    if (profile.empty()) throw std::invalid_argument("op_unary_from_kernel: empty profile");
    std::vector<Rule> rules;
    int next_value = 0;
    for (std::size_t c = 0; c + 1 < profile.size(); ++c) {
        int size = profile[c] == kOmegaEntry ? cap : profile[c];
        if (size < 1) throw std::invalid_argument("op_unary_from_kernel: bad class size");
        std::vector<int> members;
        for (int i = 0; i < size; ++i) members.push_back(next_value++);
        rules.push_back(Rule{{ArgPattern::in(std::move(members))},
                             OutputSpec::constant(static_cast<int>(c) + 1)});
    }
    // last class catches everything else (the guaranteed infinite class)
    rules.push_back(Rule{{ArgPattern::any()}, OutputSpec::constant(static_cast<int>(profile.size()))});
    return build_operation(1, std::move(rules), "ker", true);
}

inline PatternOperation builtin_operation(const std::string& name, int param = 0, int param2 = 0) {
    if (name == "f") return op_fk(param);
    if (name == "f3") return op_fk(3);
    if (name == "f4") return op_fk(4);
    if (name == "f5") return op_fk(5);
    if (name == "g") return op_gk(param);
    if (name == "g3") return op_gk(3);
    if (name == "bar") return op_bar(param);
    if (name == "bar1") return op_bar(1);
    if (name == "inj") return op_generic_injection(param == 0 ? 2 : param);
    if (name == "binj") return op_generic_injection(2);
    if (name == "constant") return op_constant(param);
    if (name == "projection") return op_projection(param, param2);
    if (name == "richard") return op_richard();
    if (name == "qxor") return op_quasilinear_xor({0}, 0, 1);
    if (name == "ess") return op_essential_finite(param);
    throw std::invalid_argument("builtin_operation: unknown name '" + name + "'");
}

// ---------------------------------------------------------------------------
// Analyses.  All are decided by exhaustive enumeration over symbolic rows
// with values in probe_values() plus canonically-named fresh symbols — rule
// firing depends only on the classifier cell of each argument, so this
// exhausts all behaviors.

namespace detail {

// Enumerate assignments of `slots` symbolic values over named probe values
// and fresh symbols with restricted-growth fresh naming; calls fn(values).
template <typename Fn>
void enumerate_symbolic_rows(const std::vector<int>& probe, int slots, Fn&& fn) {
    std::vector<SymbolicValue> cur(static_cast<std::size_t>(slots));
    auto rec = [&](auto&& self, int i, int fresh_used) -> void {
        if (i == slots) {
            fn(cur);
            return;
        }
        for (int v : probe) {
            cur[static_cast<std::size_t>(i)] = SymbolicValue::named(v);
            self(self, i + 1, fresh_used);
        }
        for (int f = 0; f <= fresh_used; ++f) {
            cur[static_cast<std::size_t>(i)] = SymbolicValue::fresh(f);
            self(self, i + 1, std::max(fresh_used, f + 1));
        }
    };
    rec(rec, 0, 0);
}

// Number of symbolic rows over `nprobe` named values and RG-named fresh
// symbols across `slots` slots, saturating at `cap`.
inline std::uint64_t symbolic_row_estimate(std::size_t nprobe, int slots, std::uint64_t cap) {
    std::uint64_t est = 1;
    for (int i = 0; i < slots; ++i) {
        est *= static_cast<std::uint64_t>(nprobe) + static_cast<std::uint64_t>(i) + 1;
        if (est > cap) return cap + 1;
    }
    return est;
}

} // namespace detail

// Def 10: op is injective in direction i iff rows differing in coordinate i
// always produce different outputs.
inline std::vector<int> directional_injectivity(const PatternOperation& op,
                                                std::uint64_t budget = 100'000'000) {
    auto probe = op.probe_values();
    int slots = 2 * op.arity;
    if (detail::symbolic_row_estimate(probe.size(), slots, budget) > budget)
        throw resource_error("directional_injectivity: enumeration exceeds budget");
    std::vector<bool> injective(static_cast<std::size_t>(op.arity), true);
    detail::enumerate_symbolic_rows(probe, slots, [&](const std::vector<SymbolicValue>& vals) {
        std::vector<SymbolicValue> a(vals.begin(), vals.begin() + op.arity);
        std::vector<SymbolicValue> b(vals.begin() + op.arity, vals.end());
        OutputTerm oa = apply_row(op, a), ob = apply_row(op, b);
        if (oa == ob)
            for (int i = 0; i < op.arity; ++i)
                if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
                    injective[static_cast<std::size_t>(i)] = false;
    });
    std::vector<int> out;
    for (int i = 0; i < op.arity; ++i)
        if (injective[static_cast<std::size_t>(i)]) out.push_back(i + 1); // 1-based directions
    return out;
}

struct DependencyProfile {
    std::vector<bool> depends;
    bool essentially_unary = false;
    int essential_count() const {
        return static_cast<int>(std::count(depends.begin(), depends.end(), true));
    }
};

inline DependencyProfile dependency_profile(const PatternOperation& op,
                                            std::uint64_t budget = 100'000'000) {
    auto probe = op.probe_values();
    if (detail::symbolic_row_estimate(probe.size(), op.arity + 1, budget) > budget)
        throw resource_error("dependency_profile: enumeration exceeds budget");
    DependencyProfile prof;
    prof.depends.assign(static_cast<std::size_t>(op.arity), false);
    // one extra slot: the alternative value at the varied position
    detail::enumerate_symbolic_rows(probe, op.arity + 1, [&](const std::vector<SymbolicValue>& vals) {
        std::vector<SymbolicValue> row(vals.begin(), vals.begin() + op.arity);
        const SymbolicValue& alt = vals.back();
        OutputTerm base = apply_row(op, row);
        for (int i = 0; i < op.arity; ++i) {
            if (row[static_cast<std::size_t>(i)] == alt) continue;
            std::vector<SymbolicValue> other = row;
            other[static_cast<std::size_t>(i)] = alt;
            if (apply_row(op, other) != base) prof.depends[static_cast<std::size_t>(i)] = true;
        }
    });
    prof.essentially_unary = prof.essential_count() <= 1;
    return prof;
}

// Lemma 26 shape: injective in one direction, and every unary section
// (either argument fixed to a representative: each probe value or one of two
// fresh symbols) is constant or injective on representative inputs.
inline bool binary_bar_membership(const PatternOperation& op) {
    if (op.arity != 2) throw std::invalid_argument("binary_bar_membership: arity must be 2");
    if (directional_injectivity(op).empty()) return false;
    auto probe = op.probe_values();
    std::vector<SymbolicValue> reps;
    for (int v : probe) reps.push_back(SymbolicValue::named(v));
    reps.push_back(SymbolicValue::fresh(0));
    reps.push_back(SymbolicValue::fresh(1));
    // section inputs get two further fresh symbols distinct from the fixed one
    std::vector<SymbolicValue> inputs;
    for (int v : probe) inputs.push_back(SymbolicValue::named(v));
    inputs.push_back(SymbolicValue::fresh(2));
    inputs.push_back(SymbolicValue::fresh(3));
    for (int fixed_arg = 0; fixed_arg < 2; ++fixed_arg) {
        for (const auto& c : reps) {
            std::vector<OutputTerm> outs;
            for (const auto& x : inputs) {
                std::vector<SymbolicValue> row(2);
                row[static_cast<std::size_t>(fixed_arg)] = c;
                row[static_cast<std::size_t>(1 - fixed_arg)] = x;
                outs.push_back(apply_row(op, row));
            }
            bool constant = std::all_of(outs.begin(), outs.end(),
                                        [&](const OutputTerm& t) { return t == outs[0]; });
            bool injective = true;
            for (std::size_t i = 0; i < outs.size() && injective; ++i)
                for (std::size_t j = i + 1; j < outs.size() && injective; ++j)
                    if (outs[i] == outs[j]) injective = false;
            if (!constant && !injective) return false;
        }
    }
    return true;
}

// Quasilinear (§5): representable as phi0(phi1(x1) + ... + phin(xn)) with
// sums modulo 2 — forces range <= 2.  Decided on the finite quotient of
// classifier cells: each probe value is its own cell plus one generic fresh
// cell per argument.
inline bool is_quasilinear(const PatternOperation& op) {
    auto probe = op.probe_values();
    std::vector<SymbolicValue> cells;
    for (int v : probe) cells.push_back(SymbolicValue::named(v));
    int ncells = static_cast<int>(cells.size()) + 1; // + generic fresh cell
    // distinct generic representatives per argument so fresh-key outputs that
    // depend on a generic argument are visible as distinct terms
    auto cell_rep = [&](int arg, int cell) {
        return cell < static_cast<int>(cells.size()) ? cells[static_cast<std::size_t>(cell)]
                                                     : SymbolicValue::fresh(arg);
    };
    // collect the table over cell tuples
    std::vector<OutputTerm> table;
    std::vector<int> idx(static_cast<std::size_t>(op.arity), 0);
    std::uint64_t entries = 1;
    for (int i = 0; i < op.arity; ++i) entries *= static_cast<std::uint64_t>(ncells);
    if (entries > 10'000'000) throw resource_error("is_quasilinear: quotient too large");
    table.reserve(entries);
    auto fill = [&](auto&& self, int pos) -> void {
        if (pos == op.arity) {
            std::vector<SymbolicValue> row(static_cast<std::size_t>(op.arity));
            for (int i = 0; i < op.arity; ++i)
                row[static_cast<std::size_t>(i)] = cell_rep(i, idx[static_cast<std::size_t>(i)]);
            table.push_back(apply_row(op, row));
            return;
        }
        for (int c = 0; c < ncells; ++c) {
            idx[static_cast<std::size_t>(pos)] = c;
            self(self, pos + 1);
        }
    };
    fill(fill, 0);
    // any reachable Fresh output means unbounded range — never quasilinear
    for (const auto& t : table)
        if (t.kind == OutputTerm::Kind::FreshVal) return false;
    std::set<OutputTerm> range(table.begin(), table.end());
    if (range.size() > 2) return false;
    // search phi_i : cells -> {0,1} and phi0 : {0,1} -> range
    std::vector<OutputTerm> range_v(range.begin(), range.end());
    std::uint64_t labelings = 1;
    for (int i = 0; i < op.arity; ++i) labelings *= (std::uint64_t{1} << ncells);
    if (labelings > 100'000'000) throw resource_error("is_quasilinear: labeling space too large");
    for (std::uint64_t lab = 0; lab < labelings; ++lab) {
        // decode: phi[i][c] = bit (i*ncells + c) of lab
        auto phi = [&](int i, int c) {
            return static_cast<int>(lab >> (i * ncells + c) & 1);
        };
        for (int swap = 0; swap < (range_v.size() == 2 ? 2 : 1); ++swap) {
            auto phi0 = [&](int bit) -> const OutputTerm& {
                if (range_v.size() == 1) return range_v[0];
                return range_v[static_cast<std::size_t>(bit ^ swap)];
            };
            bool ok = true;
            std::vector<int> cidx(static_cast<std::size_t>(op.arity), 0);
            std::size_t flat = 0;
            auto check = [&](auto&& self, int pos, int parity) -> void {
                if (!ok) return;
                if (pos == op.arity) {
                    if (!(table[flat++] == phi0(parity))) ok = false;
                    return;
                }
                for (int c = 0; c < ncells && ok; ++c) {
                    cidx[static_cast<std::size_t>(pos)] = c;
                    self(self, pos + 1, parity ^ phi(pos, c));
                }
            };
            check(check, 0, 0);
            if (ok && flat == table.size()) return true;
            if (!ok) {
                // restart flat index for the next candidate
            }
        }
    }
    return false;
}

} // namespace eqlat

#endif
