#ifndef eqlat_pp_hpp
#define eqlat_pp_hpp

// Primitive positive formulas over a named base language: evaluation to an
// orbit relation (exact for the infinite domain — bound variables may always
// take fresh values, and partition enumeration covers that), and a bounded
// best-effort search for pp definitions (the general problem is open).

#include "formula.hpp"

namespace eqlat {

using RelationEnv = std::map<std::string, OrbitRelation>;

struct PpAtom {
    enum class Kind { Eq, Neq, Base } kind = Kind::Eq;
    std::string relation;  // Base only
    std::vector<int> args; // variable indices; 2 for Eq/Neq
    auto operator<=>(const PpAtom&) const = default;
};

struct PpFormula {
    std::vector<std::string> free_variables;
    std::vector<std::string> bound_variables;
    std::vector<PpAtom> conjuncts;

    int total_variables() const {
        return static_cast<int>(free_variables.size() + bound_variables.size());
    }
};

// Parse "exists u,v: R(x,y,u,v) & u!=v" (the exists prefix is optional).
// An optional "vars x1..x4;" header fixes the free-variable order; otherwise
// free variables appear in first-occurrence order.
inline PpFormula parse_pp_formula(const std::string& text) {
    detail::FormulaParser p(text);
    p.maybe_header();
    std::vector<std::string> bound;
    p.skip_ws();
    if (p.lit("exists")) {
        do {
            bound.push_back(p.ident());
        } while (p.lit(","));
        if (!p.lit(":")) throw parse_error("expected ':' after exists list", p.pos);
    }
    std::vector<std::string> free_vars = p.vars; // declared header, if any
    std::vector<std::string> order;              // all vars in occurrence order
    auto var_index_of = [&](const std::string& name, std::size_t at) {
        if (p.declared && std::find(bound.begin(), bound.end(), name) == bound.end() &&
            std::find(free_vars.begin(), free_vars.end(), name) == free_vars.end())
            throw parse_error("undeclared variable '" + name + "'", at);
        auto it = std::find(order.begin(), order.end(), name);
        if (it == order.end()) {
            order.push_back(name);
            return static_cast<int>(order.size()) - 1;
        }
        return static_cast<int>(it - order.begin());
    };

    std::vector<PpAtom> conjuncts; // atoms with indices into `order`, remapped below
    do {
        p.skip_ws();
        std::size_t at = p.pos;
        std::string name = p.ident();
        p.skip_ws();
        if (p.peek_char('(')) {
            p.lit("(");
            PpAtom atom;
            atom.kind = PpAtom::Kind::Base;
            atom.relation = name;
            do {
                p.skip_ws();
                std::size_t vat = p.pos;
                atom.args.push_back(var_index_of(p.ident(), vat));
            } while (p.lit(","));
            if (!p.lit(")")) throw parse_error("expected ')'", p.pos);
            conjuncts.push_back(std::move(atom));
        } else {
            bool neg;
            if (p.lit("!=")) {
                neg = true;
            } else if (p.lit("=")) {
                neg = false;
            } else {
                throw parse_error("expected relation atom or (in)equality", p.pos);
            }
            int a = var_index_of(name, at);
            p.skip_ws();
            std::size_t at2 = p.pos;
            int b = var_index_of(p.ident(), at2);
            conjuncts.push_back(PpAtom{neg ? PpAtom::Kind::Neq : PpAtom::Kind::Eq, "", {a, b}});
        }
    } while (p.lit("&"));
    p.skip_ws();
    if (p.pos != text.size()) throw parse_error("trailing input", p.pos);

    PpFormula out;
    if (p.declared) {
        out.free_variables = free_vars;
    } else {
        for (const auto& v : order)
            if (std::find(bound.begin(), bound.end(), v) == bound.end())
                out.free_variables.push_back(v);
    }
    out.bound_variables = bound;
    // remap occurrence-order indices to (free..., bound...) order
    std::vector<std::string> final_order = out.free_variables;
    final_order.insert(final_order.end(), bound.begin(), bound.end());
    std::vector<int> remap(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto it = std::find(final_order.begin(), final_order.end(), order[i]);
        if (it == final_order.end())
            throw parse_error("variable '" + order[i] + "' is neither declared nor bound", 0);
        remap[i] = static_cast<int>(it - final_order.begin());
    }
    for (auto& atom : conjuncts)
        for (auto& a : atom.args) a = remap[static_cast<std::size_t>(a)];
    out.conjuncts = std::move(conjuncts);
    return out;
}

namespace detail {

inline bool pp_atom_holds(const PpAtom& atom, const Partition& assign, const RelationEnv& env) {
    switch (atom.kind) {
        case PpAtom::Kind::Eq:
            return assign[static_cast<std::size_t>(atom.args[0])] ==
                   assign[static_cast<std::size_t>(atom.args[1])];
        case PpAtom::Kind::Neq:
            return assign[static_cast<std::size_t>(atom.args[0])] !=
                   assign[static_cast<std::size_t>(atom.args[1])];
        case PpAtom::Kind::Base: {
            auto it = env.find(atom.relation);
            if (it == env.end())
                throw std::invalid_argument("pp_evaluate: unresolved relation '" + atom.relation + "'");
            if (static_cast<int>(atom.args.size()) != it->second.arity)
                throw std::invalid_argument("pp_evaluate: arity mismatch for '" + atom.relation + "'");
            std::vector<int> restricted;
            restricted.reserve(atom.args.size());
            for (int a : atom.args) restricted.push_back(assign[static_cast<std::size_t>(a)]);
            return it->second.orbits.count(pattern_of(restricted)) != 0;
        }
    }
    return false;
}

} // namespace detail

inline OrbitRelation pp_evaluate(const PpFormula& pp, const RelationEnv& env,
                                 int cap = kDefaultPartitionCap) {
    int total = pp.total_variables();
    int nfree = static_cast<int>(pp.free_variables.size());
    if (nfree < 1) throw std::invalid_argument("pp_evaluate: no free variables");
    std::set<Partition> orbits;
    for (const auto& assign : enumerate_partitions(total, cap)) {
        bool ok = true;
        for (const auto& atom : pp.conjuncts)
            if (!detail::pp_atom_holds(atom, assign, env)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<int> proj(assign.begin(), assign.begin() + nfree);
        orbits.insert(pattern_of(proj));
    }
    return OrbitRelation(nfree, std::move(orbits));
}

struct PpSearchLimits {
    int max_bound_vars = 2;
    int max_atoms = 2;
    std::uint64_t budget = 5'000'000; // candidate formulas to verify
};

// Bounded best-effort search for a pp definition of `target` over `base`.
// For each bound-variable count, enumerates conjunct multisets in increasing
// size over an ordered atom universe (equalities first, then base atoms per
// relation name, argument tuples lexicographic).  Atoms with identical
// satisfying-partition sets are deduplicated to their first representative —
// a sound symmetry reduction since formula semantics is the intersection of
// atom satisfying sets.  Any returned certificate is re-verified via
// pp_evaluate; absence of a result proves nothing.
inline std::optional<PpFormula> pp_search_bounded(const OrbitRelation& target,
                                                  const RelationEnv& base,
                                                  const PpSearchLimits& limits = {},
                                                  int cap = kDefaultPartitionCap) {
    int nfree = target.arity;
    std::optional<PpFormula> found;
    std::uint64_t visited = 0;
    bool budget_hit = false;

    for (int nbound = 0; nbound <= limits.max_bound_vars && !found && !budget_hit; ++nbound) {
        int total = nfree + nbound;
        if (total > cap) break;
        auto partitions = enumerate_partitions(total, cap);
        std::size_t np = partitions.size();
        std::size_t words = (np + 63) / 64;

        // projected free-variable pattern per partition
        std::vector<Partition> projected(np);
        for (std::size_t i = 0; i < np; ++i) {
            std::vector<int> proj(partitions[i].begin(), partitions[i].begin() + nfree);
            projected[i] = pattern_of(proj);
        }

        // atom universe with satisfying-set bitmasks, deduplicated
        std::vector<PpAtom> atoms;
        std::vector<std::vector<std::uint64_t>> masks;
        std::set<std::vector<std::uint64_t>> seen_masks;
        auto add_atom = [&](PpAtom atom) {
            std::vector<std::uint64_t> mask(words, 0);
            for (std::size_t i = 0; i < np; ++i)
                if (detail::pp_atom_holds(atom, partitions[i], base))
                    mask[i / 64] |= std::uint64_t{1} << (i % 64);
            if (!seen_masks.insert(mask).second) return;
            atoms.push_back(std::move(atom));
            masks.push_back(std::move(mask));
        };
        for (int i = 0; i < total; ++i)
            for (int j = i + 1; j < total; ++j)
                add_atom(PpAtom{PpAtom::Kind::Eq, "", {i, j}});
        for (const auto& [name, rel] : base) {
            std::vector<int> args(static_cast<std::size_t>(rel.arity), 0);
            auto rec = [&](auto&& self, int pos) -> void {
                if (pos == rel.arity) {
                    add_atom(PpAtom{PpAtom::Kind::Base, name, args});
                    return;
                }
                for (int v = 0; v < total; ++v) {
                    args[static_cast<std::size_t>(pos)] = v;
                    self(self, pos + 1);
                }
            };
            rec(rec, 0);
        }

        auto matches_target = [&](const std::vector<std::uint64_t>& mask) {
            std::set<Partition> orbits;
            for (std::size_t i = 0; i < np; ++i)
                if (mask[i / 64] >> (i % 64) & 1) orbits.insert(projected[i]);
            return orbits == target.orbits;
        };

        std::vector<std::size_t> chosen;
        std::vector<std::vector<std::uint64_t>> stack{std::vector<std::uint64_t>(words, ~std::uint64_t{0})};
        auto rec_sized = [&](auto&& self, std::size_t from, int left) -> void {
            if (found || budget_hit) return;
            if (left == 0) {
                if (++visited > limits.budget) {
                    budget_hit = true;
                    return;
                }
                if (matches_target(stack.back())) {
                    PpFormula f;
                    f.free_variables = default_variables(nfree);
                    for (int i = 0; i < nbound; ++i)
                        f.bound_variables.push_back("u" + std::to_string(i + 1));
                    for (std::size_t idx : chosen) f.conjuncts.push_back(atoms[idx]);
                    found = std::move(f);
                }
                return;
            }
            for (std::size_t i = from; i < atoms.size(); ++i) {
                chosen.push_back(i);
                std::vector<std::uint64_t> next = stack.back();
                for (std::size_t w = 0; w < words; ++w) next[w] &= masks[i][w];
                stack.push_back(std::move(next));
                self(self, i + 1, left - 1); // sets suffice: duplicates are idempotent
                stack.pop_back();
                chosen.pop_back();
                if (found || budget_hit) return;
            }
        };
        for (int size = 1; size <= limits.max_atoms && !found && !budget_hit; ++size) {
            chosen.clear();
            rec_sized(rec_sized, 0, size);
        }
    }
    if (found) {
        // re-verify the certificate through the public evaluator
        if (!(pp_evaluate(*found, base, cap) == target))
            throw std::logic_error("pp_search_bounded: certificate failed re-verification");
    } else if (budget_hit) {
        throw resource_error("pp_search_bounded: candidate budget exceeded");
    }
    return found;
}

} // namespace eqlat

#endif
